from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from index2walsh.algebra import (
    AlgNum,
    CycEl,
    alg_mul,
    alg_pow,
    complex_conjugate,
    cyc_add,
    cyc_mul,
    cyc_neg,
    embed_complex,
    galois_flip,
    norm_squared,
    zeta_pow,
)
from index2walsh.errors import DomainMismatch

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def cyc(draw, p=None):
    p = p or draw(st.sampled_from([2, 3, 5, 7]))
    return CycEl(p, draw(st.lists(small, min_size=p - 1, max_size=p - 1)))


@st.composite
def alg_triple(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    l = draw(st.sampled_from([7, 11]))
    return [AlgNum(draw(cyc(p)), draw(cyc(p)), l) for _ in range(3)]


def close(x, y, tol=1e-10):
    return abs(x - y) <= tol * max(1, abs(x), abs(y))


def test_zeta_examples():
    assert zeta_pow(2, 1).coeffs == (Fraction(-1),)
    assert zeta_pow(3, 2) == CycEl(3, [-1, -1])
    assert cyc_mul(zeta_pow(3, 1), zeta_pow(3, 2)) == CycEl.scalar(3, 1)
    assert zeta_pow(5, 7) == zeta_pow(5, 2) == zeta_pow(5, -3)


def test_quadratic_examples():
    w = (AlgNum.scalar(2, 7, -1) + AlgNum.sqrt_neg_l(2, 7)) / 2
    assert w * w == AlgNum.quadratic(2, 7, Fraction(-3, 2), Fraction(-1, 2))
    assert alg_pow(w, 7) == AlgNum.quadratic(2, 7, Fraction(13, 2), Fraction(7, 2))
    prod = AlgNum.scalar(2, 7, 1)
    for _ in range(7):
        prod = alg_mul(prod, w)
    assert prod == alg_pow(w, 7)
    assert AlgNum.sqrt_neg_l(2, 7) ** 2 == -7


def test_embedding_examples():
    assert close(embed_complex(AlgNum.sqrt_neg_l(3, 7)), mpmath.mpc(0, mpmath.sqrt(7)))
    assert close(embed_complex(AlgNum.zeta(2, 7)), -1)
    v = embed_complex(AlgNum.quadratic(2, 7, Fraction(13, 2), Fraction(7, 2)))
    assert close(v.real, 6.5) and abs(v.imag - 9.26) < 0.01


def test_conjugation_examples():
    s = AlgNum.sqrt_neg_l(3, 7)
    assert complex_conjugate(s) == -s
    z = AlgNum.zeta(3, 7)
    assert complex_conjugate(z) == AlgNum.zeta(3, 7, 2) == -1 - z


def test_norm_examples():
    w = (AlgNum.scalar(5, 7, 1) + AlgNum.sqrt_neg_l(5, 7)) / 2
    assert norm_squared(w) == 2
    assert norm_squared(AlgNum.zeta(5, 7, 3)) == 1
    assert norm_squared(AlgNum.scalar(5, 7, 0)) == 0


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        cyc_add(zeta_pow(3, 1), zeta_pow(5, 1))
    with pytest.raises(DomainMismatch):
        AlgNum.zeta(3, 7) + AlgNum.zeta(3, 11)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(-50, 50), st.integers(-50, 50))
def test_zeta_pow_is_periodic_and_multiplicative(p, s, t):
    assert zeta_pow(p, s) == zeta_pow(p, s + p)
    assert cyc_mul(zeta_pow(p, s), zeta_pow(p, t)) == zeta_pow(p, s + t)


@settings(max_examples=60)
@given(st.sampled_from([2, 3, 5, 7]).flatmap(lambda p: st.tuples(cyc(p), cyc(p), cyc(p))))
def test_cyc_ring_laws(xyz):
    x, y, z = xyz
    assert cyc_add(x, y) == cyc_add(y, x)
    assert cyc_mul(x, y) == cyc_mul(y, x)
    assert cyc_mul(cyc_mul(x, y), z) == cyc_mul(x, cyc_mul(y, z))
    assert cyc_mul(x, cyc_add(y, z)) == cyc_add(cyc_mul(x, y), cyc_mul(x, z))
    assert cyc_add(x, cyc_neg(x)) == CycEl.zero(x.p)


@settings(max_examples=60)
@given(alg_triple())
def test_alg_ring_laws(xyz):
    x, y, z = xyz
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) - y == x


@settings(max_examples=60)
@given(alg_triple())
def test_embedding_is_a_ring_map(xyz):
    x, y, _ = xyz
    assert close(embed_complex(x * y), embed_complex(x) * embed_complex(y))
    assert close(embed_complex(x + y), embed_complex(x) + embed_complex(y))


@settings(max_examples=60)
@given(alg_triple())
def test_conjugations_are_involutive_automorphisms(xyz):
    x, y, _ = xyz
    for sigma in (complex_conjugate, galois_flip):
        assert sigma(sigma(x)) == x
        assert sigma(x * y) == sigma(x) * sigma(y)
        assert sigma(x + y) == sigma(x) + sigma(y)
    assert close(embed_complex(complex_conjugate(x)), mpmath.conj(embed_complex(x)))


@settings(max_examples=60)
@given(alg_triple())
def test_norm_squared_is_real_and_matches_modulus(xyz):
    x = xyz[0]
    n = norm_squared(x)
    assert complex_conjugate(n) == n
    assert close(embed_complex(n), abs(embed_complex(x)) ** 2, 1e-9)


@settings(max_examples=40)
@given(alg_triple(), st.integers(0, 12))
def test_pow_matches_repeated_product(xyz, e):
    x = xyz[0]
    prod = AlgNum.scalar(x.p, x.l, 1)
    for _ in range(e):
        prod = prod * x
    assert alg_pow(x, e) == prod


@settings(max_examples=40)
@given(alg_triple())
def test_json_round_trip(xyz):
    x = xyz[0] * 10**40 / 7
    assert AlgNum.from_json(x.to_json()) == x
    assert all(isinstance(n, str) for row in x.to_json()["re"] for n in row)


def test_huge_values_embed_without_overflow():
    x = AlgNum.scalar(3, 107, 3) ** 5000
    assert mpmath.log10(abs(embed_complex(x))) > 2000
