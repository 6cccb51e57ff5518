"""Exact arithmetic in Q(zeta_p) and in Q(zeta_p)(sqrt(-l)).

``CycEl`` stores ``c_0 + c_1 z + ... + c_{p-2} z^{p-2}`` with ``z = zeta_p``
reduced modulo the cyclotomic polynomial, so every element has a unique
coefficient vector.  ``AlgNum`` is a pair ``re + im * sqrt(-l)`` of such
elements.  All coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import DomainMismatch, InvalidInput

__all__ = [
    "AlgNum",
    "CycEl",
    "QuadGaussValue",
    "alg_add",
    "alg_mul",
    "alg_pow",
    "complex_conjugate",
    "cyc_add",
    "cyc_mul",
    "cyc_neg",
    "embed_complex",
    "galois_flip",
    "norm_squared",
    "zeta_pow",
]


def _reduce(p: int, by_exponent: list) -> tuple[Fraction, ...]:
    # by_exponent has length p; rewrite z^(p-1) = -(1 + z + ... + z^(p-2))
    top = by_exponent[p - 1]
    return tuple(Fraction(c - top) for c in by_exponent[: p - 1])


class CycEl:
    """An element of Q(zeta_p) in the power basis of length ``p - 1``."""

    __slots__ = ("p", "coeffs", "_hash")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise InvalidInput(f"expected {p - 1} coefficients, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def scalar(cls, p: int, c) -> CycEl:
        return cls(p, (c,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> CycEl:
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> CycEl:
        """``sum_t counts[t] * zeta_p^t`` for a length-``p`` sequence."""
        if len(counts) != p:
            raise InvalidInput(f"expected {p} exponent counts")
        return cls(p, _reduce(p, list(counts)))

    def _coerce(self, other) -> CycEl:
        if isinstance(other, CycEl):
            if other.p != self.p:
                raise DomainMismatch(f"p={self.p} vs p={other.p}")
            return other
        if isinstance(other, (int, Rational)):
            return CycEl.scalar(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycEl(self.p, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CycEl:
        return CycEl(self.p, [-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return CycEl(self.p, [x * other for x in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        acc = [Fraction(0)] * p
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    acc[(i + j) % p] += x * y
        return CycEl(p, _reduce(p, acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return CycEl(self.p, [x / other for x in self.coeffs])
        return NotImplemented

    def __pow__(self, e: int) -> CycEl:
        if e < 0:
            raise InvalidInput("negative powers are not supported")
        result, base = CycEl.scalar(self.p, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational)):
            other = CycEl.scalar(self.p, other)
        if not isinstance(other, CycEl):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.p, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def conjugate(self) -> CycEl:
        """Image under ``zeta_p -> zeta_p^-1``."""
        p = self.p
        acc = [Fraction(0)] * p
        for i, x in enumerate(self.coeffs):
            acc[(-i) % p] += x
        return CycEl(p, _reduce(p, acc))

    def embed(self) -> mpmath.mpc:
        z = mpmath.expjpi(mpmath.mpf(2) / self.p)
        return mpmath.fsum(
            mpmath.mpf(c.numerator) / c.denominator * z**i
            for i, c in enumerate(self.coeffs)
            if c
        ) if any(self.coeffs) else mpmath.mpc(0)

    def __repr__(self) -> str:
        return f"CycEl(p={self.p}, {list(map(str, self.coeffs))})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def zeta_pow(p: int, t: int) -> CycEl:
    """``zeta_p^t``; depends only on ``t mod p``."""
    counts = [0] * p
    counts[t % p] = 1
    return CycEl.from_exponent_counts(p, counts)


def cyc_add(x: CycEl, y: CycEl) -> CycEl:
    return x + y


def cyc_mul(x: CycEl, y: CycEl) -> CycEl:
    return x * y


def cyc_neg(x: CycEl) -> CycEl:
    return -x


class AlgNum:
    """``re + im * sqrt(-l)`` with ``re, im`` in Q(zeta_p)."""

    __slots__ = ("re", "im", "l", "_hash")

    def __init__(self, re: CycEl, im: CycEl, l: int):
        if re.p != im.p:
            raise DomainMismatch(f"components over p={re.p} and p={im.p}")
        self.re = re
        self.im = im
        self.l = l
        self._hash = None

    @property
    def p(self) -> int:
        return self.re.p

    @classmethod
    def from_cyc(cls, x: CycEl, l: int) -> AlgNum:
        return cls(x, CycEl.zero(x.p), l)

    @classmethod
    def scalar(cls, p: int, l: int, c) -> AlgNum:
        return cls(CycEl.scalar(p, c), CycEl.zero(p), l)

    @classmethod
    def zeta(cls, p: int, l: int, t: int = 1) -> AlgNum:
        return cls(zeta_pow(p, t), CycEl.zero(p), l)

    @classmethod
    def sqrt_neg_l(cls, p: int, l: int) -> AlgNum:
        return cls(CycEl.zero(p), CycEl.scalar(p, 1), l)

    @classmethod
    def quadratic(cls, p: int, l: int, x, y) -> AlgNum:
        """The rational-coefficient element ``x + y sqrt(-l)``."""
        return cls(CycEl.scalar(p, x), CycEl.scalar(p, y), l)

    def _coerce(self, other) -> AlgNum:
        if isinstance(other, AlgNum):
            if (other.p, other.l) != (self.p, self.l):
                raise DomainMismatch(f"(p, l)=({self.p}, {self.l}) vs ({other.p}, {other.l})")
            return other
        if isinstance(other, CycEl):
            if other.p != self.p:
                raise DomainMismatch(f"p={self.p} vs p={other.p}")
            return AlgNum.from_cyc(other, self.l)
        if isinstance(other, (int, Rational)):
            return AlgNum.scalar(self.p, self.l, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgNum(self.re + other.re, self.im + other.im, self.l)

    __radd__ = __add__

    def __neg__(self) -> AlgNum:
        return AlgNum(-self.re, -self.im, self.l)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return AlgNum(self.re * other, self.im * other, self.l)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        re = self.re * other.re - self.im * other.im * self.l
        im = self.re * other.im + self.im * other.re
        return AlgNum(re, im, self.l)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return AlgNum(self.re / other, self.im / other, self.l)
        return NotImplemented

    def __pow__(self, e: int) -> AlgNum:
        if e < 0:
            raise InvalidInput("negative powers are not supported")
        result, base = AlgNum.scalar(self.p, self.l, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Rational, CycEl)):
            other = self._coerce(other)
        if not isinstance(other, AlgNum):
            return NotImplemented
        return (self.l, self.re, self.im) == (other.l, other.re, other.im)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.l, self.re, self.im))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_rational(self) -> bool:
        return not self.im and self.re.is_rational()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInput(f"{self} is not rational")
        return self.re.coeffs[0]

    def __repr__(self) -> str:
        return f"AlgNum(l={self.l}, re={self.re!r}, im={self.im!r})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im = str(self.im)
        root = f"sqrt(-{self.l})"
        im_part = f"{root}" if im == "1" else f"({im})*{root}"
        if not self.re:
            return im_part
        return f"{self.re} + {im_part}"

    def to_json(self) -> dict:
        def enc(x: CycEl) -> list[list[str]]:
            return [[str(c.numerator), str(c.denominator)] for c in x.coeffs]

        return {"p": self.p, "l": self.l, "re": enc(self.re), "im": enc(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> AlgNum:
        p, l = int(obj["p"]), int(obj["l"])

        def dec(rows) -> CycEl:
            return CycEl(p, [Fraction(int(n), int(d)) for n, d in rows])

        return cls(dec(obj["re"]), dec(obj["im"]), l)


def alg_add(x: AlgNum, y: AlgNum) -> AlgNum:
    return x + y


def alg_mul(x: AlgNum, y: AlgNum) -> AlgNum:
    return x * y


def alg_pow(x: AlgNum, e: int) -> AlgNum:
    return x**e


def complex_conjugate(x: AlgNum) -> AlgNum:
    """``zeta_p -> zeta_p^-1`` and ``sqrt(-l) -> -sqrt(-l)``."""
    return AlgNum(x.re.conjugate(), -x.im.conjugate(), x.l)


def galois_flip(x: AlgNum) -> AlgNum:
    """``sqrt(-l) -> -sqrt(-l)``, fixing Q(zeta_p)."""
    return AlgNum(x.re, -x.im, x.l)


def norm_squared(x: AlgNum) -> AlgNum:
    return x * complex_conjugate(x)


def embed_complex(x: AlgNum | CycEl, precision: int = 30) -> mpmath.mpc:
    """Complex value under ``zeta_p -> e^(2 pi i/p)``, ``sqrt(-l) -> i sqrt(l)``.

    Returns an :class:`mpmath.mpc` so that values far beyond the double range
    (e.g. for q = 3^5671) stay representable.
    """
    with mpmath.workdps(precision):
        if isinstance(x, CycEl):
            return +x.embed()
        root = mpmath.mpc(0, mpmath.sqrt(x.l))
        return +(x.re.embed() + root * x.im.embed())


@dataclass(frozen=True)
class QuadGaussValue:
    """``sign * i^i_power * sqrt(q)`` with ``q = p^f``, kept symbolic."""

    sign: int
    i_power: int
    p: int
    f: int

    @property
    def q(self) -> int:
        return self.p**self.f

    def embed(self, precision: int = 30) -> mpmath.mpc:
        with mpmath.workdps(precision):
            unit = mpmath.mpc(0, 1) ** self.i_power
            return +(self.sign * unit * mpmath.sqrt(self.q))

    def modulus_squared(self) -> int:
        # |sign * i^k|^2 = 1
        return self.q

    def __str__(self) -> str:
        unit = ["", "i*", "-", "-i*"][self.i_power % 4]
        if self.sign < 0:
            unit = {"": "-", "i*": "-i*", "-": "", "-i*": "i*"}[unit]
        return f"{unit}sqrt({self.p}^{self.f})"
