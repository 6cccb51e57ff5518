"""Explicit finite fields F_{p^f} in a polynomial basis.

Polynomial arithmetic over F_p is delegated to :mod:`sympy.polys.galoistools`
(coefficient lists, highest degree first).  The public representation used in
this package is the opposite order: coefficient vectors are lowest degree
first, so ``coeffs[j]`` multiplies ``x^j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_irred_p_ben_or,
    gf_mul,
    gf_pow_mod,
    gf_rem,
    gf_sub,
)

from .errors import CannotCertifyPrimitive, InvalidInput, ZeroInput

__all__ = [
    "FieldCtx",
    "FieldElem",
    "build_field",
    "classify",
    "factor_group_order",
    "is_irreducible",
    "trace",
]

# group orders larger than this are not factored (3^5671 - 1 would never finish)
MAX_FACTOR_BITS = 256


def _to_hi(coeffs) -> list[int]:
    """Low-first vector -> galoistools list (high first, no leading zeros)."""
    out = [int(c) for c in reversed(list(coeffs))]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _to_low(poly: list[int], f: int) -> tuple[int, ...]:
    low = [int(c) for c in reversed(poly)]
    return tuple(low + [0] * (f - len(low)))


def is_irreducible(modulus, p: int) -> bool:
    """Ben-Or irreducibility test; ``modulus`` is low-first and monic."""
    hi = _to_hi(modulus)
    if len(hi) < 2:
        return False
    return bool(gf_irred_p_ben_or(hi, p, ZZ))


def factor_group_order(n: int) -> dict[int, int]:
    """Prime factorization of ``n`` or :class:`CannotCertifyPrimitive`."""
    if n.bit_length() > MAX_FACTOR_BITS:
        raise CannotCertifyPrimitive(f"group order has {n.bit_length()} bits; not factoring")
    fac = factorint(n, limit=2**24)
    if not all(isprime(r) for r in fac):
        raise CannotCertifyPrimitive(f"could not fully factor {n}")
    return fac


@dataclass(frozen=True)
class FieldElem:
    coeffs: tuple[int, ...]

    def __str__(self) -> str:
        terms = [f"{c}*x^{j}" if j else str(c) for j, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class FieldCtx:
    """F_p[x]/(modulus) together with a primitive element and the trace form.

    When ``N`` is given, ``beta = alpha^((q-1)/N)`` and its first ``N`` powers
    are attached for :func:`classify`.
    """

    p: int
    f: int
    modulus: tuple[int, ...]
    alpha: FieldElem
    trace_form: tuple[int, ...]
    N: int | None = None
    beta_powers: tuple[FieldElem, ...] = field(default=(), repr=False)

    @property
    def q(self) -> int:
        return self.p**self.f

    @cached_property
    def _hi(self) -> list[int]:
        return _to_hi(self.modulus)

    def elem(self, coeffs) -> FieldElem:
        c = [int(v) % self.p for v in coeffs]
        if len(c) > self.f:
            return self._wrap(gf_rem(_to_hi(c), self._hi, self.p, ZZ))
        return FieldElem(tuple(c + [0] * (self.f - len(c))))

    def _wrap(self, poly: list[int]) -> FieldElem:
        return FieldElem(_to_low(poly, self.f))

    def scalar(self, c: int) -> FieldElem:
        return self.elem([c])

    @property
    def one(self) -> FieldElem:
        return self.scalar(1)

    @property
    def zero(self) -> FieldElem:
        return self.scalar(0)

    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self._wrap(gf_add(_to_hi(x.coeffs), _to_hi(y.coeffs), self.p, ZZ))

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self._wrap(gf_sub(_to_hi(x.coeffs), _to_hi(y.coeffs), self.p, ZZ))

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        prod = gf_mul(_to_hi(x.coeffs), _to_hi(y.coeffs), self.p, ZZ)
        return self._wrap(gf_rem(prod, self._hi, self.p, ZZ))

    def pow(self, x: FieldElem, e: int) -> FieldElem:
        if e < 0:
            if self.is_zero(x):
                raise ZeroInput("0 has no inverse")
            e %= self.q - 1
        return self._wrap(gf_pow_mod(_to_hi(x.coeffs), e, self._hi, self.p, ZZ))

    def is_zero(self, x: FieldElem) -> bool:
        return not any(x.coeffs)

    def frobenius_trace(self, x: FieldElem) -> int:
        """``x + x^p + ... + x^(p^(f-1))`` computed literally; a self-check."""
        acc, y = self.zero, x
        for _ in range(self.f):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        if any(acc.coeffs[1:]):
            raise InvalidInput("trace landed outside F_p; modulus is not irreducible")
        return acc.coeffs[0]

    def mul_matrix(self, y: FieldElem) -> np.ndarray:
        """``M`` with ``v @ M = coords(v * y)`` for row vectors ``v``."""
        rows = []
        for j in range(self.f):
            basis = [0] * j + [1]
            rows.append(self.mul(self.elem(basis), y).coeffs)
        return np.array(rows, dtype=np.int64)

    def beta(self) -> FieldElem:
        if self.N is None:
            raise InvalidInput("field context has no N attached")
        return self.beta_powers[1 % self.N]

    def with_N(self, N: int) -> FieldCtx:
        if (self.q - 1) % N:
            raise InvalidInput(f"N={N} does not divide q-1")
        b = self.pow(self.alpha, (self.q - 1) // N)
        powers = [self.one]
        for _ in range(N - 1):
            powers.append(self.mul(powers[-1], b))
        return FieldCtx(self.p, self.f, self.modulus, self.alpha, self.trace_form, N, tuple(powers))


def _trace_form(modulus: tuple[int, ...], p: int) -> tuple[int, ...]:
    # Newton's identities: Tr(x^k) is the k-th power sum of the modulus roots
    f = len(modulus) - 1
    c = modulus  # c[f] == 1
    ps = [f % p]
    for k in range(1, f):
        s = k * c[f - k]
        for i in range(1, k):
            s += c[f - i] * ps[k - i]
        ps.append(-s % p)
    return tuple(ps)


def _digits(n: int, p: int, f: int) -> list[int]:
    return [(n // p**j) % p for j in range(f)]


def _first_irreducible(p: int, f: int, seed: int) -> tuple[int, ...]:
    total = p**f
    for step in range(total):
        low = _digits((seed + step) % total, p, f)
        if f > 1 and low[0] == 0:
            continue
        cand = tuple(low + [1])
        if is_irreducible(cand, p):
            return cand
    raise InvalidInput(f"no irreducible polynomial of degree {f} over F_{p}")  # pragma: no cover


def _smallest_primitive(ctx: FieldCtx) -> FieldElem:
    order = ctx.q - 1
    if order == 1:
        return ctx.one
    primes = list(factor_group_order(order))
    for n in range(1, ctx.q):
        cand = ctx.elem(_digits(n, ctx.p, ctx.f))
        if all(ctx.pow(cand, order // r) != ctx.one for r in primes):
            return cand
    raise CannotCertifyPrimitive("no primitive element found")  # pragma: no cover


def build_field(p: int, f: int, seed: int = 0, N: int | None = None) -> FieldCtx:
    """Deterministic F_{p^f}: first irreducible modulus at or after ``seed``
    in lexicographic order, then the smallest primitive element."""
    if not isprime(p) or f < 1:
        raise InvalidInput(f"need a prime p and f >= 1, got p={p}, f={f}")
    modulus = _first_irreducible(p, f, seed)
    bare = FieldCtx(p, f, modulus, FieldElem((1,) + (0,) * (f - 1)), _trace_form(modulus, p))
    ctx = FieldCtx(p, f, modulus, _smallest_primitive(bare), bare.trace_form)
    return ctx.with_N(N) if N is not None else ctx


def trace(ctx: FieldCtx, x: FieldElem) -> int:
    """Absolute trace to F_p via the precomputed linear form."""
    return sum(a * b for a, b in zip(ctx.trace_form, x.coeffs)) % ctx.p


def classify(ctx: FieldCtx, x: FieldElem) -> int:
    """Index ``i`` with ``x^((q-1)/N) = beta^i``."""
    if ctx.is_zero(x):
        raise ZeroInput("0 has no class")
    if ctx.N is None:
        raise InvalidInput("field context has no N attached")
    y = ctx.pow(x, (ctx.q - 1) // ctx.N)
    return ctx.beta_powers.index(y)
