"""Closed forms: Gauss sums, trace tables, I-sums and the Walsh spectrum.

Everything here is exact.  Values live in Q(zeta_p)(sqrt(-l)) as
:class:`~index2walsh.algebra.AlgNum`; frequencies are Python integers.

Conventions.  ``chi`` is the order-``N`` character with ``chi(alpha) = zeta_N``,
``psi`` the canonical additive character and ``beta = alpha^((q-1)/N)``.  The
sign of ``b`` in :class:`~index2walsh.params.Params` selects which of the two
conjugate Gauss-sum values ``chi`` gets; ``delta`` (Special case) and
``epsilon`` (Generic case) are tied to it by
:func:`~index2walsh.params.period_residue`.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .algebra import AlgNum, CycEl, QuadGaussValue, embed_complex, galois_flip, norm_squared
from .errors import InternalInconsistency, InvalidExponent, Unsupported
from .params import KClass, Params, legendre_symbol

__all__ = [
    "ISums",
    "SpectrumLine",
    "SpectrumTable",
    "TraceTable",
    "corollary_spectrum",
    "corollary_applies",
    "cyclotomic_numbers_order2",
    "frequencies",
    "gauss_sum_index2",
    "gauss_sum_total",
    "i_sums",
    "i_sums_direct",
    "quadratic_gauss",
    "spectrum",
    "spectrum_at_zero",
    "tabulated_values",
    "trace_beta_table",
    "walsh_value_via_eq32",
]

ZERO_B = "b=0"
LINE_ORDER = (ZERO_B, KClass.H2_0, KClass.H2_1, KClass.ZERO, KClass.LH1_0, KClass.LH1_1)
NONZERO_CLASSES = (KClass.ZERO, KClass.LH1_0, KClass.LH1_1, KClass.H2_0, KClass.H2_1)


def cyclotomic_numbers_order2(q: int) -> dict[tuple[int, int], int]:
    """``(i, j)_2`` for odd ``q`` from the classical closed form."""
    if q % 2 == 0:
        raise Unsupported("order-2 cyclotomic numbers need odd q")
    if q % 4 == 1:
        a, b = (q - 5) // 4, (q - 1) // 4
        return {(0, 0): a, (0, 1): b, (1, 0): b, (1, 1): b}
    a, b = (q - 3) // 4, (q + 1) // 4
    return {(0, 0): a, (0, 1): b, (1, 0): a, (1, 1): a}


def quadratic_gauss(p: int, f: int) -> QuadGaussValue:
    """Gauss sum of the quadratic character of F_{p^f}."""
    if p == 2:
        raise Unsupported("F_{2^f} has no quadratic character")
    sign = -1 if (f - 1) % 2 else 1
    if p % 4 == 1:
        return QuadGaussValue(sign, 0, p, f)
    return QuadGaussValue(sign, f % 4, p, f)


def _g(params: Params) -> AlgNum:
    """``(a + b sqrt(-l))/2``."""
    return AlgNum.quadratic(params.p, params.l, Fraction(params.a, 2), Fraction(params.b, 2))


def _ab_powers(params: Params) -> tuple[AlgNum, AlgNum]:
    """``A = p^((f-hl)/2) g^l`` and its Galois conjugate ``B``."""
    p, l, f, h = params.p, params.l, params.f, params.h
    A = _g(params) ** l * p ** ((f - h * l) // 2)
    return A, galois_flip(A)


def gauss_sum_index2(params: Params, i: int) -> AlgNum:
    """``G(chi^i)`` for ``1 <= i <= N - 1``."""
    p, l, f, h, N = params.p, params.l, params.f, params.h, params.N
    if i % N == 0:
        raise InvalidExponent(f"exponent {i} is divisible by N={N}")
    i %= N
    t = 1 if i % l == 0 else 0
    u = i // l if t else i
    lt = l**t
    value = _g(params) ** lt * p ** ((f - h * lt) // 2)
    if legendre_symbol(u % l, l) == -1:
        value = galois_flip(value)
    return value


def gauss_sum_total(params: Params) -> AlgNum:
    """``sum_{j=1}^{N-1} G(chi^j)``, which equals ``sum_x psi(x^N)``.

    This is the expression ``(l-1)/2 (A + B) + l(l-1)/2 p^((f-h)/2) a``.  It is
    *not* the Walsh value at ``b = 0``; see :func:`spectrum_at_zero`.
    """
    p, l, f, h = params.p, params.l, params.f, params.h
    A, B = _ab_powers(params)
    return (A + B) * Fraction(l - 1, 2) + l * (l - 1) // 2 * p ** ((f - h) // 2) * params.a


@dataclass(frozen=True)
class TraceTable:
    """``i -> Tr(beta^i)`` as a function of the class of ``i``."""

    params: Params
    entries: dict
    epsilon: int | None

    def at(self, i: int) -> int:
        return self.entries[self.params.partition.class_of(i)]

    def as_list(self) -> list[int]:
        return [self.at(i) for i in range(self.params.N)]


def trace_beta_table(params: Params) -> TraceTable:
    p, l, f = params.p, params.l, params.f
    if params.case.is_special:
        one_on = KClass.LH1_1 if params.delta == -1 else KClass.LH1_0
        entries = {k: 0 for k in NONZERO_CLASSES}
        entries[KClass.ZERO] = 1
        entries[one_on] = 1
        if f % p != 1:
            raise InternalInconsistency(f"Tr(1) = {f} mod {p} should be 1 in the Special case")
        return TraceTable(params, entries, None)
    eps = params.epsilon
    if (eps * eps + eps + (l + 1) // 4) % p:
        raise InternalInconsistency(f"epsilon={eps} is not (-1 + sqrt(-{l}))/2 mod {p}")
    entries = {
        KClass.ZERO: f % p,
        KClass.LH1_0: (l * eps) % p,
        KClass.LH1_1: (-l * (1 + eps)) % p,
        KClass.H2_0: 0,
        KClass.H2_1: 0,
    }
    return TraceTable(params, entries, eps)


def _class_sizes(params: Params) -> dict:
    l = params.l
    return {
        KClass.ZERO: 1,
        KClass.LH1_0: (l - 1) // 2,
        KClass.LH1_1: (l - 1) // 2,
        KClass.H2_0: l * (l - 1) // 2,
        KClass.H2_1: l * (l - 1) // 2,
    }


def _i0(params: Params, table: TraceTable) -> AlgNum:
    counts = [0] * params.p
    for k, size in _class_sizes(params).items():
        counts[table.entries[k]] += size
    return AlgNum.from_cyc(CycEl.from_exponent_counts(params.p, counts), params.l)


def spectrum_at_zero(params: Params) -> AlgNum:
    """Walsh value at ``b = 0``: ``1 + (q-1)/N * sum_i psi(beta^i)``.

    ``x -> x^((q-1)/N)`` maps F_q^* onto ``<beta>`` with fibres of size
    ``(q-1)/N``, so only the trace table enters.
    """
    table = trace_beta_table(params)
    return 1 + _i0(params, table) * ((params.q - 1) // params.N)


@dataclass(frozen=True)
class ISums:
    k_class: KClass
    I0: AlgNum
    I1_0: AlgNum
    I1_1: AlgNum
    I2_0: AlgNum
    I2_1: AlgNum

    def as_tuple(self) -> tuple[AlgNum, ...]:
        return (self.I0, self.I1_0, self.I1_1, self.I2_0, self.I2_1)


def _special_i_sums(params: Params, k: KClass) -> ISums:
    p, l = params.p, params.l
    one = AlgNum.scalar(p, l, 1)
    s = AlgNum.sqrt_neg_l(p, l)
    zm1 = AlgNum.zeta(p, l) - 1  # zeta_p - 1
    w_plus, w_minus = (one + s) / 2, (one - s) / 2
    zero = AlgNum.scalar(p, l, 0)

    I0 = zm1 * Fraction(l + 1, 2) + l * l
    I1 = zm1 * Fraction(l * l - 1, 4)
    if k in (KClass.H2_0, KClass.H2_1):
        u, v = w_plus * (-zm1) * Fraction(l + 1, 2), w_minus * (-zm1) * Fraction(l + 1, 2)
        if k is KClass.H2_1:
            u, v = v, u
        return ISums(k, I0, u, v, zero, zero)
    # delta = +1 exchanges the roles of lH1_0 and lH1_1 and of the two I2 values at k = 0
    plus = params.delta == 1
    if k is KClass.ZERO:
        x, y = w_plus * zm1 * (l * (l - 1) // 2), w_minus * zm1 * (l * (l - 1) // 2)
        if plus:
            x, y = y, x
        return ISums(k, I0, I1, I1, x, y)
    flat = -zm1 * Fraction(l * l + l, 4)
    squared = (KClass.LH1_1 if plus else KClass.LH1_0)
    if k is squared:
        x, y = w_plus**2 * (-zm1) * l, w_minus**2 * (-zm1) * l
        if plus:
            x, y = y, x
        return ISums(k, I0, I1, I1, x, y)
    return ISums(k, I0, I1, I1, flat, flat)


def _generic_i_sums(params: Params, k: KClass) -> ISums:
    p, l, f = params.p, params.l, params.f
    table = trace_beta_table(params)
    eps = table.epsilon
    one = AlgNum.scalar(p, l, 1)
    s = AlgNum.sqrt_neg_l(p, l)
    Z0 = AlgNum.zeta(p, l, l * (l - 1) // 2)
    Z1 = AlgNum.zeta(p, l, l * eps)
    Z2 = AlgNum.zeta(p, l, -l * (1 + eps))
    zero = AlgNum.scalar(p, l, 0)
    m = Fraction(l - 1, 2)
    lf = l * (l - 1) // 2
    neg_minus, neg_plus = (-one - s) / 2, (-one + s) / 2  # (-1 -+ sqrt(-l))/2
    w_plus, w_minus = (one + s) / 2, (one - s) / 2

    I0 = Z0 + (Z1 + Z2) * m + l * (l - 1)
    I1 = Z0 * m + (Z1 + Z2) * (m * m) - lf
    if k is KClass.ZERO:
        I2_0 = Z0 * lf + neg_minus * Z1 * lf + neg_plus * Z2 * lf
        I2_1 = Z0 * lf + neg_plus * Z1 * lf + neg_minus * Z2 * lf
        return ISums(k, I0, I1, I1, I2_0, I2_1)
    c = Fraction(l * l + l, 4)
    if k is KClass.LH1_0:
        I2_0 = neg_minus * Z0 * l + Z2 * c + Z1 * w_plus**2 * l
        I2_1 = neg_plus * Z0 * l + Z2 * c + Z1 * w_minus**2 * l
        return ISums(k, I0, I1, I1, I2_0, I2_1)
    if k is KClass.LH1_1:
        I2_0 = neg_plus * Z0 * l + Z1 * c + Z2 * w_minus**2 * l
        I2_1 = neg_minus * Z0 * l + Z1 * c + Z2 * w_plus**2 * l
        return ISums(k, I0, I1, I1, I2_0, I2_1)
    x = w_plus * l + neg_minus * (Z1 + Z2) * m + neg_minus * Z0
    y = w_minus * l + neg_plus * (Z1 + Z2) * m + neg_plus * Z0
    if k is KClass.H2_1:
        x, y = y, x
    return ISums(k, I0, x, y, zero, zero)


def i_sums(params: Params, k_class: KClass) -> ISums:
    """The five I-sums for ``b`` in class ``k_class``, from the case formulas."""
    k_class = KClass(k_class)
    if params.case.is_special:
        return _special_i_sums(params, k_class)
    return _generic_i_sums(params, k_class)


def _periods(params: Params) -> tuple[AlgNum, AlgNum]:
    """``sum_{u in H1_0} zeta_l^u`` and ``sum_{u in H1_1} zeta_l^u``."""
    p, l = params.p, params.l
    s = AlgNum.sqrt_neg_l(p, l)
    return (s - 1) / 2, (-s - 1) / 2


def i_sums_direct(params: Params, k_class: KClass) -> ISums:
    """The I-sums evaluated from their defining double sums.

    ``I_1^(e)(k) = sum_i psi(beta^(i-k)) sum_{j in lH1_e} zeta_N^(-ij)`` and
    likewise for ``H2_e``; the inner sums are Gauss periods, evaluated
    class-wise, and the trace table supplies ``psi(beta^m)``.
    """
    k_class = KClass(k_class)
    p, l, N = params.p, params.l, params.N
    part = params.partition
    table = trace_beta_table(params)
    eta = _periods(params)
    half, lf = Fraction(l - 1, 2), Fraction(l * (l - 1), 2)

    def kind(i: int) -> tuple:
        # the inner sums depend on i only through this key
        if i == 0:
            return ("0", 0)
        if i % l == 0:
            return ("l", 0 if (-(i // l)) % l in part.H1_0 else 1)
        return ("u", 0 if (-i) % l in part.H1_0 else 1)

    def inner(key: tuple) -> tuple:
        tag, e = key
        if tag == "0":
            return (half, half, lf, lf)
        if tag == "l":
            return (half, half, eta[e] * l, eta[1 - e] * l)
        return (eta[e], eta[1 - e], 0, 0)

    k = part.representative(k_class)
    buckets = Counter((table.at(i - k), kind(i)) for i in range(N))
    totals = [AlgNum.scalar(p, l, 0)] * 5
    for (t, key), count in buckets.items():
        z = AlgNum.zeta(p, l, t) * count
        totals[0] = totals[0] + z
        for j, v in enumerate(inner(key)):
            if v:
                totals[j + 1] = totals[j + 1] + z * v
    return ISums(k_class, *totals)


def walsh_value_via_eq32(params: Params, k_class: KClass, sums: ISums | None = None) -> AlgNum:
    """Assemble the Walsh value for ``b != 0`` in class ``k_class`` from I-sums."""
    p, l, f, h, N = params.p, params.l, params.f, params.h, params.N
    if sums is None:
        sums = i_sums(params, k_class)
    g = _g(params)
    gb = galois_flip(g)
    gl, gbl = g**l, gb**l
    pA = p ** ((f - h * l) // 2)
    pC = p ** ((f - h) // 2)
    total = 1 - sums.I0 / N
    total = total + (gl * sums.I1_0 + gbl * sums.I1_1) * Fraction(pA, N)
    total = total + (g * sums.I2_0 + gb * sums.I2_1) * Fraction(pC, N)
    return total


def _generic_table(params: Params) -> dict:
    p, l, f, h, N = params.p, params.l, params.f, params.h, params.N
    a, b = params.a, params.b
    eps = params.epsilon
    one = AlgNum.scalar(p, l, 1)
    s = AlgNum.sqrt_neg_l(p, l)
    Z0 = AlgNum.zeta(p, l, l * (l - 1) // 2)
    Z1 = AlgNum.zeta(p, l, l * eps)
    Z2 = AlgNum.zeta(p, l, -l * (1 + eps))
    A, B = _ab_powers(params)
    C = p ** ((f - h) // 2)
    m = Fraction(l - 1, 2)

    D1 = Z0 + (Z1 + Z2) * m
    D2 = Z0 * a + Z1 * Fraction(-a + b * l, 2) + Z2 * Fraction(-a - b * l, 2)
    D3 = Z0 * Fraction(-a + b * l, 2) + Z1 * Fraction(a - a * l - 2 * b * l, 4) + Z2 * Fraction(a * (l + 1), 4)
    D4 = Z0 * Fraction(-a - b * l, 2) + Z1 * Fraction(a * (l + 1), 4) + Z2 * Fraction(a - a * l + 2 * b * l, 4)
    D5 = (s - 1) / 2 * Z0 + (s - 1) * (Z1 + Z2) * Fraction(l - 1, 4) + (one - s) * Fraction(l, 2)
    D6 = (-s - 1) / 2 * Z0 + (-s - 1) * (Z1 + Z2) * Fraction(l - 1, 4) + (one + s) * Fraction(l, 2)

    common = 1 + (-1 + (A + B) * m) * D1 / N - (A + B + 2) * Fraction(l - 1, 2 * l)
    # -I0 = -D1 - l(l-1); the l(l-1) units (trace 0) must be kept on these rows
    I0 = D1 + l * (l - 1)
    return {
        KClass.H2_1: 1 + (-I0 + A * D5 + B * D6) / N,
        KClass.H2_0: 1 + (-I0 + A * D6 + B * D5) / N,
        KClass.ZERO: common + D2 * (C * Fraction(l - 1, 2 * l)),
        KClass.LH1_0: common + D3 * Fraction(C, l),
        KClass.LH1_1: common + D4 * Fraction(C, l),
    }


def _special_table(params: Params) -> dict:
    p, l, f, h, N = params.p, params.l, params.f, params.h, params.N
    a, b, delta = params.a, params.b, params.delta
    one = AlgNum.scalar(p, l, 1)
    s = AlgNum.sqrt_neg_l(p, l)
    omz = 1 - AlgNum.zeta(p, l)  # 1 - zeta_p
    A, B = _ab_powers(params)
    C = p ** ((f - h) // 2)
    w_plus, w_minus = (one + s) / 2, (one - s) / 2

    outer = omz * Fraction(l + 1, 2 * N)
    base = (l + 1) - (A + B) * Fraction(l * l - 1, 2)

    def row(coef: Fraction) -> AlgNum:
        return omz * (base + coef * l * C) / (2 * N)

    # the row carrying delta belongs to lH1_0 when delta = -1 and to lH1_1
    # when delta = +1; both rows have the same frequency
    with_delta = row(Fraction(a - a * l + 2 * delta * b * l, 2))
    without = row(Fraction(a * (l + 1), 2))
    lh1_0, lh1_1 = (with_delta, without) if delta == -1 else (without, with_delta)
    return {
        KClass.H2_0: outer * (1 + w_plus * A + w_minus * B),
        KClass.H2_1: outer * (1 + w_minus * A + w_plus * B),
        KClass.ZERO: row(-Fraction((l - 1) * (a + delta * b * l), 2)),
        KClass.LH1_0: lh1_0,
        KClass.LH1_1: lh1_1,
    }


def tabulated_values(params: Params) -> dict:
    """Walsh values per class from the tabulated closed form for the case.

    The ``b = 0`` entry is :func:`spectrum_at_zero`.
    """
    values = _special_table(params) if params.case.is_special else _generic_table(params)
    values[ZERO_B] = spectrum_at_zero(params)
    return values


def frequencies(params: Params) -> dict:
    q, l = params.q, params.l
    if (q - 1) % (l * l):
        raise InternalInconsistency("l^2 does not divide q - 1")
    coset = (q - 1) // (l * l)
    half = (l - 1) // 2
    return {
        ZERO_B: 1,
        KClass.H2_0: half * l * coset,
        KClass.H2_1: half * l * coset,
        KClass.ZERO: coset,
        KClass.LH1_0: half * coset,
        KClass.LH1_1: half * coset,
    }


@dataclass
class SpectrumLine:
    k_class: str
    value: AlgNum
    frequency: int
    approx: mpmath.mpc = field(repr=False, default=None)


def _fmt_mpf(x) -> str:
    return mpmath.nstr(x, 20, min_fixed=-30, max_fixed=30)


@dataclass
class SpectrumTable:
    params: Params
    lines: list[SpectrumLine]
    source: str = "b>0"

    @property
    def convention(self) -> dict:
        """Sign of ``b``, the paired delta and how the sign was chosen."""
        return {"b": 1 if self.params.b > 0 else -1, "delta": self.params.delta, "source": self.source}

    def total_frequency(self) -> int:
        return sum(line.frequency for line in self.lines)

    def multiset(self) -> Counter:
        """Exact ``{value: frequency}``; equal values are merged."""
        out: Counter = Counter()
        for line in self.lines:
            out[line.value] += line.frequency
        return out

    def merged(self) -> list[tuple[AlgNum, int, list[str]]]:
        groups: dict = {}
        for line in self.lines:
            entry = groups.setdefault(line.value, [0, []])
            entry[0] += line.frequency
            entry[1].append(str(line.k_class))
        return [(v, n, labels) for v, (n, labels) in groups.items()]

    @property
    def distinct_values(self) -> int:
        return len(self.multiset())

    def mean_sum(self) -> AlgNum:
        """``sum freq * value``; equals ``q`` for a Walsh spectrum with f(0) = 0."""
        total = AlgNum.scalar(self.params.p, self.params.l, 0)
        for line in self.lines:
            total = total + line.value * line.frequency
        return total

    def parseval_sum(self) -> AlgNum:
        total = AlgNum.scalar(self.params.p, self.params.l, 0)
        for line in self.lines:
            total = total + norm_squared(line.value) * line.frequency
        return total

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "convention": self.convention,
            "distinct_values": self.distinct_values,
            "lines": [
                {
                    "k_class": str(line.k_class),
                    "value": line.value.to_json(),
                    "approx": [_fmt_mpf(line.approx.real), _fmt_mpf(line.approx.imag)],
                    "frequency": str(line.frequency),
                }
                for line in self.lines
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k_class", "value_symbolic", "approx_re", "approx_im", "frequency"])
        for line in self.lines:
            writer.writerow([
                str(line.k_class),
                str(line.value),
                _fmt_mpf(line.approx.real),
                _fmt_mpf(line.approx.imag),
                str(line.frequency),
            ])
        return buf.getvalue()

    def to_text(self) -> str:
        out = [
            f"Walsh spectrum of Tr(x^((q-1)/{self.params.N})) over F_{self.params.p}^{self.params.f}",
            f"h={self.params.h} a={self.params.a} b={self.params.b} case={self.params.case}",
        ]
        for line in self.lines:
            out.append(f"{str(line.k_class):>6}  freq={line.frequency}  ~ {mpmath.nstr(line.approx, 12)}")
            out.append(f"        {line.value}")
        out.append(f"{self.distinct_values} distinct values, total frequency {self.total_frequency()}")
        return "\n".join(out)


def corollary_applies(params: Params) -> bool:
    """``1 + l = 4 p^h`` with the sign pairing ``b * delta = a``."""
    return (
        params.case.is_special
        and 1 + params.l == 4 * params.p**params.h
        and params.b * params.delta == params.a
    )


def corollary_spectrum(params: Params) -> Counter:
    """Five-valued specialisation when ``1 + l = 4 p^h``, as ``{value: freq}``."""
    if not corollary_applies(params):
        raise Unsupported("the specialisation needs 1 + l = 4 p^h and b * delta = a")
    p, l, f, h, N = params.p, params.l, params.f, params.h, params.N
    a = params.a
    if a != (1 if l % 8 == 3 else -1):
        raise InternalInconsistency(f"a={a} disagrees with l mod 8 = {l % 8}")
    one = AlgNum.scalar(p, l, 1)
    s = AlgNum.sqrt_neg_l(p, l)
    omz = 1 - AlgNum.zeta(p, l)
    A, B = _ab_powers(params)
    C = p ** ((f - h) // 2)
    freq = frequencies(params)
    outer = omz * Fraction(l + 1, 4 * N)
    out: Counter = Counter()
    out[spectrum_at_zero(params)] += 1
    out[omz * Fraction(l + 1, 2 * N) * (1 + (one + s) / 2 * A + (one - s) / 2 * B)] += freq[KClass.H2_0]
    out[omz * Fraction(l + 1, 2 * N) * (1 + (one - s) / 2 * A + (one + s) / 2 * B)] += freq[KClass.H2_1]
    out[outer * (2 - (A + B) * (l - 1) - a * (l - 1) * l * C)] += freq[KClass.ZERO]
    out[outer * (2 - (A + B) * (l - 1) + a * l * C)] += freq[KClass.LH1_0] + freq[KClass.LH1_1]
    return out


def spectrum(params: Params, precision: int = 30, source: str = "b>0") -> SpectrumTable:
    """The six-line Walsh spectrum with exact values and frequencies.

    ``source`` only labels how the sign of ``b`` was picked.
    """
    values = tabulated_values(params)
    freq = frequencies(params)
    lines = [
        SpectrumLine(k, values[k], freq[k], embed_complex(values[k], precision))
        for k in LINE_ORDER
    ]
    table = SpectrumTable(params, lines, source)
    if table.total_frequency() != params.q:
        raise InternalInconsistency("frequencies do not sum to q")
    if corollary_applies(params) and corollary_spectrum(params) != table.multiset():
        raise InternalInconsistency("specialised table disagrees with the general one")
    return table
