"""Instance parameters for the index-2 setting.

An instance is a pair of primes ``(p, l)`` with ``l = 3 (mod 4)``, ``l != 3``
and ``ord_{l^2}(p) = l(l-1)/2``.  Everything else (``N``, ``f``, ``q``, the
class number ``h``, the integers ``a, b`` with ``a^2 + l b^2 = 4 p^h`` and the
arithmetic case) is derived here with exact integer arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from functools import cached_property

from sympy import factorint, isprime
from sympy.ntheory import sqrt_mod

from .errors import (
    BadL,
    InternalInconsistency,
    InvalidInput,
    NoRepresentation,
    NotAResidue,
    NotIndexTwo,
    UnsupportedDiscriminant,
)

__all__ = [
    "ArithCase",
    "KClass",
    "Params",
    "ResiduePartition",
    "class_number",
    "legendre_symbol",
    "multiplicative_order",
    "period_residue",
    "primitive_root",
    "residue_partition",
    "solve_ab",
    "sqrt_mod_p",
    "validate_instance",
]


class KClass(str, enum.Enum):
    """The five classes of Z/l^2Z that a Walsh value depends on."""

    ZERO = "0"
    LH1_0 = "lH1_0"
    LH1_1 = "lH1_1"
    H2_0 = "H2_0"
    H2_1 = "H2_1"

    def __str__(self) -> str:
        return self.value


def multiplicative_order(x: int, n: int) -> int:
    """Smallest ``e >= 1`` with ``x**e = 1 (mod n)``.

    Works down from the group order ``phi(n)`` one prime factor at a time,
    so it never iterates over the exponents themselves.
    """
    if n < 2:
        raise InvalidInput(f"modulus must be >= 2, got {n}")
    x %= n
    if math.gcd(x, n) != 1:
        raise InvalidInput(f"{x} is not invertible modulo {n}")
    phi = 1
    for r, e in factorint(n).items():
        phi *= (r - 1) * r ** (e - 1)
    order = phi
    for r in factorint(phi):
        while order % r == 0 and pow(x, order // r, n) == 1:
            order //= r
    return order


def primitive_root(n: int) -> int:
    """Smallest generator of (Z/nZ)^*; ``n`` must be 2, 4, p^k or 2p^k."""
    phi = 1
    for r, e in factorint(n).items():
        phi *= (r - 1) * r ** (e - 1)
    for g in range(1, n):
        if math.gcd(g, n) == 1 and multiplicative_order(g, n) == phi:
            return g
    raise InvalidInput(f"(Z/{n}Z)^* is not cyclic")


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime ``p`` via Euler's criterion."""
    if p == 2 or not isprime(p):
        raise InvalidInput(f"{p} is not an odd prime")
    s = pow(a, (p - 1) // 2, p)
    return -1 if s == p - 1 else s


def sqrt_mod_p(a: int, p: int) -> int:
    """Square root of ``a`` modulo the prime ``p``; the root in ``[0, p/2]``."""
    a %= p
    if p == 2 or a == 0:
        return a
    if legendre_symbol(a, p) != 1:
        raise NotAResidue(f"{a} is not a square modulo {p}")
    r = sqrt_mod(a, p)
    return min(r, p - r)


def _check_l(l: int) -> None:
    if not isprime(l) or l % 4 != 3 or l == 3:
        raise BadL(f"l must be a prime = 3 (mod 4) other than 3, got {l}")


def class_number(l: int) -> int:
    """Class number of Q(sqrt(-l)) for a prime ``l = 3 (mod 4)``, ``l > 3``.

    Dirichlet's formula for the discriminant ``-l``::

        h = sum_{0 < a < l/2} (a|l)  /  (2 - (2|l))
    """
    if not isprime(l) or l % 4 != 3 or l == 3:
        raise UnsupportedDiscriminant(f"need a prime l = 3 (mod 4), l > 3; got {l}")
    s = sum(legendre_symbol(a, l) for a in range(1, (l + 1) // 2))
    d = 2 - legendre_symbol(2, l)
    if s % d:
        raise InternalInconsistency(f"class number sum {s} not divisible by {d}")
    return s // d


def solve_ab(p: int, l: int, h: int) -> tuple[int, int]:
    """Solve ``a^2 + l b^2 = 4 p^h`` with ``a = -2 p^((l-1+2h)/4) (mod l)``.

    ``b`` is returned positive and prime to ``p`` (the representation coming
    from the prime ideal itself, not a scaled one).
    """
    if (l - 1 + 2 * h) % 4:
        raise NoRepresentation(f"(l-1+2h)/4 is not integral for l={l}, h={h}")
    target = 4 * p**h
    residue = (-2 * pow(p, (l - 1 + 2 * h) // 4, l)) % l
    b = 1
    while l * b * b <= target:
        a2 = target - l * b * b
        a = math.isqrt(a2)
        if a * a == a2 and b % p:
            for cand in (a, -a):
                if cand % l == residue:
                    return cand, b
        b += 1
    raise NoRepresentation(f"no solution of a^2 + {l} b^2 = 4*{p}^{h} with the congruence")


def period_residue(p: int, a: int, b: int) -> int:
    """Residue of ``(-1 + sqrt(-l))/2`` modulo ``P1 = <(a + b sqrt(-l))/2, p>``.

    Since ``(a + b sqrt(-l))/2 = (a + b)/2 + b*(-1 + sqrt(-l))/2`` lies in
    ``P1``, the period is ``-((a + b)/2) / b (mod p)``.  This fixes how the
    sign of ``b`` pairs with the trace table (and with delta).
    """
    if (a + b) % 2:
        raise InvalidInput("a and b must have the same parity")
    if b % p == 0:
        raise InvalidInput(f"b={b} is divisible by p={p}")
    return (-((a + b) // 2) * pow(b, -1, p)) % p


@dataclass(frozen=True)
class ArithCase:
    """Generic (``-l != 1 mod p``) or Special with its delta sign."""

    tag: str
    delta: int | None = None

    @property
    def is_special(self) -> bool:
        return self.tag == "Special"

    def __str__(self) -> str:
        return f"Special(delta={self.delta:+d})" if self.is_special else "Generic"


GENERIC = ArithCase("Generic")


@dataclass(frozen=True)
class ResiduePartition:
    """``Z/l^2Z = {0} u lH1_0 u lH1_1 u H2_0 u H2_1``."""

    l: int
    gamma: int
    H1_0: frozenset[int]
    H1_1: frozenset[int]
    H2_0: frozenset[int]
    H2_1: frozenset[int]

    @property
    def N(self) -> int:
        return self.l * self.l

    def class_of(self, i: int) -> KClass:
        i %= self.N
        if i == 0:
            return KClass.ZERO
        if i % self.l == 0:
            return KClass.LH1_0 if i // self.l in self.H1_0 else KClass.LH1_1
        return KClass.H2_0 if i % self.l in self.H1_0 else KClass.H2_1

    def members(self, k: KClass) -> list[int]:
        l = self.l
        return {
            KClass.ZERO: [0],
            KClass.LH1_0: sorted(l * u for u in self.H1_0),
            KClass.LH1_1: sorted(l * u for u in self.H1_1),
            KClass.H2_0: sorted(self.H2_0),
            KClass.H2_1: sorted(self.H2_1),
        }[k]

    def representative(self, k: KClass) -> int:
        return self.members(k)[0]


def residue_partition(l: int) -> ResiduePartition:
    _check_l(l)
    N = l * l
    gamma = primitive_root(N)
    H1_0 = frozenset(pow(gamma, 2 * e, l) for e in range((l - 1) // 2))
    H1_1 = frozenset(range(1, l)) - H1_0
    H2_0 = frozenset(pow(gamma, 2 * e, N) for e in range(l * (l - 1) // 2))
    H2_1 = frozenset(u for u in range(1, N) if u % l) - H2_0
    return ResiduePartition(l, gamma, H1_0, H1_1, H2_0, H2_1)


@dataclass(frozen=True)
class Params:
    """A validated index-2 instance.

    ``b`` carries the sign convention; ``case.delta`` is always paired with it
    through :func:`period_residue`, so ``(b, delta)`` and ``(-b, -delta)``
    describe the same spectrum.
    """

    p: int
    l: int
    h: int
    a: int
    b: int
    case: ArithCase

    @property
    def N(self) -> int:
        return self.l * self.l

    @property
    def f(self) -> int:
        return self.l * (self.l - 1) // 2

    @property
    def q_log(self) -> tuple[int, int]:
        return (self.p, self.f)

    @cached_property
    def q(self) -> int:
        return self.p**self.f

    @property
    def delta(self) -> int | None:
        return self.case.delta

    @property
    def epsilon(self) -> int:
        """Residue of ``(-1 + sqrt(-l))/2`` at ``P1``, an element of F_p."""
        return period_residue(self.p, self.a, self.b)

    @property
    def coprime_pf(self) -> bool:
        # a hypothesis of the general Gauss-sum setting; never used
        return math.gcd(self.p, self.f) == 1

    @cached_property
    def partition(self) -> ResiduePartition:
        return residue_partition(self.l)

    def with_b_sign(self, sign: int) -> Params:
        """Same instance under the convention ``sign(b) = sign``."""
        if sign not in (1, -1):
            raise InvalidInput("sign must be +1 or -1")
        if (self.b > 0) == (sign > 0):
            return self
        return _with_b(self, -self.b)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "l": self.l,
            "N": self.N,
            "f": self.f,
            "q": {"p": self.p, "f": self.f},
            "h": self.h,
            "a": self.a,
            "b": self.b,
            "case": self.case.tag,
            "delta": self.delta,
            "epsilon": self.epsilon if not self.case.is_special else None,
        }


def _delta_for(p: int, l: int, a: int, b: int) -> ArithCase:
    if (-l - 1) % p:
        return GENERIC
    s = period_residue(p, a, b)
    if s == 0:
        return ArithCase("Special", -1)
    if s == p - 1:
        return ArithCase("Special", 1)
    raise InternalInconsistency(f"period residue {s} is neither 0 nor -1 mod {p}")


def _with_b(params: Params, b: int) -> Params:
    return replace(params, b=b, case=_delta_for(params.p, params.l, params.a, b))


def validate_instance(p: int, l: int, b_sign: int = 1) -> Params:
    """Check ``(p, l)`` and derive the full parameter record.

    ``b_sign`` selects the sign convention for ``b``; delta follows from it.
    """
    _check_l(l)
    if not isprime(p):
        raise InvalidInput(f"p must be prime, got {p}")
    if p == l:
        raise NotIndexTwo(f"p must differ from l, got p = l = {p}")
    f = l * (l - 1) // 2
    order = multiplicative_order(p, l * l)
    if order != f:
        raise NotIndexTwo(f"ord_{l * l}({p}) = {order}, need {f}")
    h = class_number(l)
    a, b = solve_ab(p, l, h)
    params = Params(p, l, h, a, b, _delta_for(p, l, a, b))
    return params.with_b_sign(b_sign)
