from __future__ import annotations

import random

import pytest
from sympy import GF, Poly, symbols

from index2walsh.errors import CannotCertifyPrimitive, InvalidInput, ZeroInput
from index2walsh.gf import build_field, classify, factor_group_order, is_irreducible, trace

X = symbols("x")


def sympy_irreducible(low, p):
    return Poly(list(reversed(low)), X, domain=GF(p)).is_irreducible


def test_build_field_2_21():
    ctx = build_field(2, 21, 0, N=49)
    assert ctx.modulus == (1, 0, 1) + (0,) * 18 + (1,)
    assert ctx.alpha.coeffs == (0, 1) + (0,) * 19
    assert ctx.q == 2**21
    ones = [i for i in range(49) if trace(ctx, ctx.pow(ctx.beta(), i)) == 1]
    assert ones == [0, 7, 14, 28]


def test_build_field_small_cases():
    f11 = build_field(11, 3)
    assert f11.q == 1331 and is_irreducible(f11.modulus, 11)
    prime = build_field(7, 1)
    assert prime.q == 7
    # smallest primitive root mod 7
    assert prime.alpha.coeffs == (3,)
    with pytest.raises(InvalidInput):
        build_field(4, 2)


@pytest.mark.parametrize("p,f", [(2, 5), (3, 4), (5, 3), (7, 2), (2, 8)])
def test_is_irreducible_agrees_with_sympy(p, f):
    rng = random.Random(p * 100 + f)
    for _ in range(40):
        low = [rng.randrange(p) for _ in range(f)] + [1]
        assert is_irreducible(low, p) == sympy_irreducible(low, p)


@pytest.mark.parametrize("p,f,seed", [(2, 21, 0), (3, 5, 7), (11, 3, 0), (5, 4, 123)])
def test_trace_matches_frobenius(p, f, seed):
    ctx = build_field(p, f, seed)
    rng = random.Random(seed)
    for _ in range(25):
        x = ctx.elem([rng.randrange(p) for _ in range(f)])
        assert trace(ctx, x) == ctx.frobenius_trace(x)


def test_alpha_is_primitive():
    ctx = build_field(3, 4)
    order = ctx.q - 1
    for r in factor_group_order(order):
        assert ctx.pow(ctx.alpha, order // r) != ctx.one
    assert ctx.pow(ctx.alpha, order) == ctx.one


def test_trace_is_linear_and_onto():
    ctx = build_field(5, 3)
    values = set()
    rng = random.Random(1)
    for _ in range(30):
        x = ctx.elem([rng.randrange(5) for _ in range(3)])
        y = ctx.elem([rng.randrange(5) for _ in range(3)])
        assert trace(ctx, ctx.add(x, y)) == (trace(ctx, x) + trace(ctx, y)) % 5
        values.add(trace(ctx, x))
    assert values == set(range(5))


def test_classify(field_2_21):
    ctx = field_2_21
    assert classify(ctx, ctx.one) == 0
    assert classify(ctx, ctx.alpha) == 1
    assert classify(ctx, ctx.pow(ctx.alpha, 50)) == 1
    with pytest.raises(ZeroInput):
        classify(ctx, ctx.zero)
    with pytest.raises(InvalidInput):
        classify(build_field(3, 2), build_field(3, 2).one)


def test_factor_group_order_guard():
    assert factor_group_order(2**21 - 1) == {7: 2, 127: 1, 337: 1}
    with pytest.raises(CannotCertifyPrimitive):
        factor_group_order(3**5671 - 1)


def test_mul_matrix_row_convention():
    ctx = build_field(3, 3)
    rng = random.Random(3)
    x = ctx.elem([rng.randrange(3) for _ in range(3)])
    y = ctx.elem([rng.randrange(3) for _ in range(3)])
    import numpy as np

    prod = np.array(x.coeffs) @ ctx.mul_matrix(y) % 3
    assert tuple(int(c) for c in prod) == ctx.mul(x, y).coeffs
