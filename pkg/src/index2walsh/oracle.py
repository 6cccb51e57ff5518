"""Brute-force oracle: enumerate F_q and count what the closed forms predict.

The workhorse is :func:`count_matrix`.  It walks ``x = alpha^s`` for every
``s`` in ``0..q-2``, reads off ``Tr(x)`` from the linear trace form and the
class ``s mod N``, and tallies ``counts[s mod N][Tr(x)]``.  Every Walsh value
and every Gauss sum of an order-``N`` character is a weighted sum of that grid.

The walk is vectorised: a block of exponents is laid out as ``R`` rows of
``L`` consecutive exponents, and all rows are advanced by one multiplication
by ``alpha`` at a time (a matrix product mod ``p``).
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from sympy import factorint

from .algebra import AlgNum, CycEl
from .closed_form import cyclotomic_numbers_order2
from .errors import InternalInconsistency, InvalidInput, Unsupported
from .gf import FieldCtx, FieldElem, build_field, trace
from .params import Params

__all__ = [
    "BruteSpectrum",
    "CountMatrix",
    "brute_cyclotomic_numbers",
    "cyclotomic_check",
    "brute_gauss_sum",
    "brute_power_sum",
    "brute_quadratic_gauss",
    "brute_spectrum_at_zero",
    "brute_walsh_spectrum",
    "count_matrix",
    "determine_delta",
    "in_field_trace_table",
    "lemma21_check",
    "params_for_period",
    "period_in_field",
    "power_coordinates",
]


# ---------------------------------------------------------------------------
# streaming kernel


def _power_blocks(ctx: FieldCtx, start: int, stop: int):
    """Yield ``(exponents, coords)`` covering ``alpha^s`` for ``start <= s < stop``."""
    n = stop - start
    if n <= 0:
        return
    p = ctx.p
    steps = max(1, math.isqrt(n))
    rows = -(-n // steps)
    step_m = ctx.mul_matrix(ctx.alpha)
    jump_m = ctx.mul_matrix(ctx.pow(ctx.alpha, steps))
    V = np.empty((rows, ctx.f), dtype=np.int64)
    V[0] = ctx.pow(ctx.alpha, start).coeffs
    for r in range(1, rows):
        V[r] = V[r - 1] @ jump_m % p
    base = start + np.arange(rows, dtype=np.int64) * steps
    for k in range(steps):
        exps = base + k
        keep = exps < stop
        if keep.all():
            yield exps, V
        else:
            yield exps[keep], V[keep]
        V = V @ step_m % p


def power_coordinates(ctx: FieldCtx) -> np.ndarray:
    """Coordinates of ``alpha^s`` for ``s = 0..q-2``, one row per ``s``."""
    out = np.empty((ctx.q - 1, ctx.f), dtype=np.int64)
    for exps, V in _power_blocks(ctx, 0, ctx.q - 1):
        out[exps] = V
    return out


@dataclass(frozen=True)
class CountMatrix:
    """``counts[i][t] = #{x != 0 : x^((q-1)/N) = beta^i, Tr(x) = t}``."""

    N: int
    p: int
    counts: np.ndarray

    def row_sums(self) -> list[int]:
        return [int(v) for v in self.counts.sum(axis=1)]

    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other: CountMatrix) -> CountMatrix:
        return CountMatrix(self.N, self.p, self.counts + other.counts)


def _count_range(ctx: FieldCtx, N: int, start: int, stop: int) -> np.ndarray:
    p = ctx.p
    tf = np.array(ctx.trace_form, dtype=np.int64)
    acc = np.zeros(N * p, dtype=np.int64)
    for exps, V in _power_blocks(ctx, start, stop):
        t = V @ tf % p
        acc += np.bincount((exps % N) * p + t, minlength=N * p)
    return acc.reshape(N, p)


def count_matrix(ctx: FieldCtx, N: int, workers: int = 1) -> CountMatrix:
    """One pass over ``F_q^*``; ``workers > 1`` splits the exponent range
    across processes and adds the partial grids (the result is identical)."""
    if (ctx.q - 1) % N:
        raise InvalidInput(f"N={N} does not divide q-1")
    total = ctx.q - 1
    if workers <= 1:
        counts = _count_range(ctx, N, 0, total)
    else:
        cuts = [total * w // workers for w in range(workers + 1)]
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_count_range, [ctx] * workers, [N] * workers, cuts[:-1], cuts[1:])
            counts = sum(parts)
    cm = CountMatrix(N, ctx.p, counts)
    rows = cm.row_sums()
    if cm.total() != total or len(set(rows)) != 1:
        raise InternalInconsistency(f"count matrix is unbalanced: {rows[:4]}...")
    return cm


# ---------------------------------------------------------------------------
# Walsh spectrum by brute force


def _beta_traces(ctx: FieldCtx) -> list[int]:
    return [trace(ctx, b) for b in ctx.beta_powers]


def _weighted(p: int, l: int, exponent_counts) -> AlgNum:
    return AlgNum.from_cyc(CycEl.from_exponent_counts(p, [int(c) for c in exponent_counts]), l)


@dataclass(frozen=True)
class BruteSpectrum:
    """Walsh values indexed by ``k`` (``b^((q-1)/N) = beta^k``) plus ``f^(0)``."""

    q: int
    N: int
    at_zero: AlgNum
    by_k: tuple[AlgNum, ...]

    def multiset(self) -> Counter:
        coset = (self.q - 1) // self.N
        ms: Counter = Counter({self.at_zero: 1})
        for v in self.by_k:
            ms[v] += coset
        return ms


def brute_walsh_spectrum(ctx: FieldCtx, counts: CountMatrix | None = None) -> BruteSpectrum:
    """``f^(b) = 1 + sum_{i,t} counts[i][t] * zeta^(Tr(beta^(i-k)) + t)``."""
    if ctx.N is None:
        raise InvalidInput("field context has no N attached")
    N, p = ctx.N, ctx.p
    l = math.isqrt(N)
    cm = counts if counts is not None else count_matrix(ctx, N)
    T = np.array(_beta_traces(ctx), dtype=np.int64)
    t = np.arange(p, dtype=np.int64)
    by_k = []
    for k in range(N):
        shifted = np.roll(T, k)  # shifted[i] = T[i - k]
        idx = (shifted[:, None] + t[None, :]) % p
        ec = np.bincount(idx.ravel(), weights=cm.counts.ravel(), minlength=p)
        ec = np.rint(ec).astype(np.int64)
        ec[0] += 1
        by_k.append(_weighted(p, l, ec))
    return BruteSpectrum(ctx.q, N, brute_spectrum_at_zero(ctx, cm), tuple(by_k))


def brute_spectrum_at_zero(ctx: FieldCtx, counts: CountMatrix) -> AlgNum:
    """``sum_x zeta^(Tr(x^((q-1)/N)))``: each class ``i`` contributes its size."""
    p, l = ctx.p, math.isqrt(counts.N)
    ec = [0] * p
    ec[0] = 1
    for i, size in enumerate(counts.row_sums()):
        ec[trace(ctx, ctx.beta_powers[i])] += size
    return _weighted(p, l, ec)


def brute_power_sum(ctx: FieldCtx, counts: CountMatrix) -> AlgNum:
    """``sum_x zeta^(Tr(x^N))``; ``x^N`` covers the class-0 coset ``N`` times."""
    p, N = ctx.p, counts.N
    ec = [N * int(c) for c in counts.counts[0]]
    ec[0] += 1
    return _weighted(p, math.isqrt(N), ec)


# ---------------------------------------------------------------------------
# Gauss sums


def brute_gauss_sum(
    ctx: FieldCtx, counts: CountMatrix, j: int, precision: int = 30
) -> tuple[mpmath.mpc, np.ndarray]:
    """``G(chi^j)`` with ``chi(alpha) = e^(2 pi i / N)``.

    Also returns the folded grid ``g[r][t]`` (classes ``i`` with ``i*j = r``)
    that the value is a weighted sum of.
    """
    N, p = counts.N, counts.p
    if not 0 < j < N:
        raise InvalidInput(f"need 0 < j < N, got j={j}")
    folded = np.zeros((N, p), dtype=np.int64)
    for i in range(N):
        folded[i * j % N] += counts.counts[i]
    with mpmath.workdps(precision + 10):
        zN = [mpmath.expjpi(mpmath.mpf(2 * r) / N) for r in range(N)]
        zp = [mpmath.expjpi(mpmath.mpf(2 * t) / p) for t in range(p)]
        val = mpmath.fsum(int(folded[r, t]) * zN[r] * zp[t] for r in range(N) for t in range(p) if folded[r, t])
    return +val, folded


def _log_traces(ctx: FieldCtx) -> np.ndarray:
    tf = np.array(ctx.trace_form, dtype=np.int64)
    return power_coordinates(ctx) @ tf % ctx.p


def brute_quadratic_gauss(ctx: FieldCtx, precision: int = 30) -> mpmath.mpc:
    """``G(eta) = sum_{x != 0} eta(x) zeta^Tr(x)`` by enumeration (odd ``q``)."""
    if ctx.p == 2:
        raise Unsupported("the quadratic character needs odd q")
    tr = _log_traces(ctx)
    sign = np.where(np.arange(ctx.q - 1) % 2 == 0, 1, -1)
    per_t = np.bincount(tr, weights=sign, minlength=ctx.p)
    with mpmath.workdps(precision + 10):
        val = mpmath.fsum(int(round(c)) * mpmath.expjpi(mpmath.mpf(2 * t) / ctx.p) for t, c in enumerate(per_t))
    return +val


# ---------------------------------------------------------------------------
# cyclotomic numbers of order 2


def brute_cyclotomic_numbers(q: int, seed: int = 0) -> dict[tuple[int, int], int]:
    """``(i, j)_2 = #{x in C_i : 1 + x in C_j}`` by enumerating ``F_q``."""
    if q % 2 == 0:
        raise Unsupported("order-2 cyclotomic numbers need odd q")
    fac = factorint(q)
    if len(fac) != 1:
        raise InvalidInput(f"{q} is not a prime power")
    ((p, f),) = fac.items()
    ctx = build_field(p, f, seed)
    coords = power_coordinates(ctx)
    weights = p ** np.arange(f, dtype=np.int64)
    enc = coords @ weights
    log = np.full(q, -1, dtype=np.int64)
    log[enc] = np.arange(q - 1)
    c0 = coords[:, 0]
    shifted = enc + np.where(c0 == p - 1, -(p - 1), 1)  # encoding of 1 + x
    target = log[shifted]
    ok = target >= 0
    i = np.arange(q - 1)[ok] % 2
    j = target[ok] % 2
    grid = np.bincount(i * 2 + j, minlength=4)
    return {(a, b): int(grid[2 * a + b]) for a in (0, 1) for b in (0, 1)}


def cyclotomic_check(q: int, seed: int = 0) -> tuple[bool, dict, dict]:
    brute = brute_cyclotomic_numbers(q, seed)
    closed = cyclotomic_numbers_order2(q)
    return brute == closed, brute, closed


# ---------------------------------------------------------------------------
# delta and the trace table inside a field


def _powers(ctx: FieldCtx, x: FieldElem, n: int) -> list[FieldElem]:
    out = [ctx.one]
    for _ in range(n - 1):
        out.append(ctx.mul(out[-1], x))
    return out


def _field_period(ctx: FieldCtx, xi: FieldElem, H1_0) -> int:
    pw = _powers(ctx, xi, max(H1_0) + 1)
    s = ctx.zero
    for u in sorted(H1_0):
        s = ctx.add(s, pw[u])
    if any(s.coeffs[1:]):
        raise InternalInconsistency("period is not in F_p")
    return s.coeffs[0]


def _min_poly(ctx: FieldCtx, roots: list[FieldElem]) -> tuple[tuple[int, ...], ...]:
    poly = [ctx.one]  # low-first, coefficients in the field
    for r in roots:
        new = [ctx.zero] * (len(poly) + 1)
        for j, c in enumerate(poly):
            new[j + 1] = ctx.add(new[j + 1], c)
            new[j] = ctx.sub(new[j], ctx.mul(r, c))
        poly = new
    return tuple(c.coeffs for c in poly)


def _subfield(params: Params, seed: int = 0) -> tuple[FieldCtx, FieldElem]:
    return _subfield_cached(params.p, params.l, seed, params.partition)


@lru_cache(maxsize=16)
def _subfield_cached(p: int, l: int, seed: int, part) -> tuple[FieldCtx, FieldElem]:
    """``F_{p^d}``, ``d = (l-1)/2``, with an order-``l`` element ``xi``.

    ``xi`` is chosen so that its minimal polynomial is the lexicographically
    smaller (low-degree coefficient first) of the two factors of ``Phi_l``.
    """
    d = (l - 1) // 2
    sub = build_field(p, d, seed)
    xi = sub.pow(sub.alpha, (sub.q - 1) // l)
    non_residue = min(part.H1_1)
    other = sub.pow(xi, non_residue)
    polys = []
    for root in (xi, other):
        pw = _powers(sub, root, l)
        mp = _min_poly(sub, [pw[u] for u in sorted(part.H1_0)])
        if any(any(c[1:]) for c in mp):
            raise InternalInconsistency("minimal polynomial left F_p")
        polys.append(tuple(c[0] for c in mp))
    return sub, (xi if polys[0] <= polys[1] else other)


def period_in_field(params: Params, ctx: FieldCtx | None = None, seed: int = 0) -> int:
    """``s = sum_{u in H1_0} xi^u`` for an order-``l`` element ``xi``.

    With a full field context ``xi = beta^l``, which ties the answer to the
    chosen ``alpha``.  Without one ``xi`` lives in the subfield of degree
    ``(l-1)/2``, picked as in :func:`_subfield`.
    """
    if ctx is not None:
        _check_ctx(params, ctx)
        return _field_period(ctx, ctx.beta_powers[params.l], params.partition.H1_0)
    sub, xi = _subfield(params, seed)
    return _field_period(sub, xi, params.partition.H1_0)


def _check_ctx(params: Params, ctx: FieldCtx) -> None:
    if (ctx.p, ctx.f, ctx.N) != (params.p, params.f, params.N):
        raise InvalidInput("field context does not match the instance")


def determine_delta(params: Params, ctx: FieldCtx | None = None, seed: int = 0) -> int:
    """``-1`` if the period is 0, ``+1`` if it is ``-1`` (Special case only)."""
    if not params.case.is_special:
        raise Unsupported("delta is only defined when -l = 1 (mod p)")
    s = period_in_field(params, ctx, seed)
    if s == 0:
        return -1
    if s == params.p - 1:
        return 1
    raise InternalInconsistency(f"period {s} is neither 0 nor -1 mod {params.p}")


def params_for_period(params: Params, s: int) -> Params:
    """The sign of ``b`` whose period residue is ``s``."""
    for sign in (1, -1):
        cand = params.with_b_sign(sign)
        if cand.epsilon == s % params.p:
            return cand
    raise InternalInconsistency(f"{s} is not a root of X^2 + X + (1+l)/4 mod {params.p}")


def in_field_trace_table(params: Params, ctx: FieldCtx | None = None, seed: int = 0) -> list[int]:
    """``Tr_{q/p}(beta^i)`` for ``i = 0..N-1`` computed inside a field.

    With ``ctx`` the traces are read directly.  Otherwise the degree
    ``(l-1)/2`` subfield suffices: ``beta^(l u)`` lies there and has trace
    ``l * Tr_sub(xi^u)``, and for units ``i`` the relative trace down to the
    subfield is ``beta^i * sum_j xi^(c j)`` with ``c != 0``, which vanishes.
    """
    p, l, N = params.p, params.l, params.N
    if ctx is not None:
        _check_ctx(params, ctx)
        return _beta_traces(ctx)
    sub, xi = _subfield(params, seed)
    d = sub.f
    t0 = (pow(p, d, N) - 1) // l  # p^d = 1 + l t0 (mod l^2)
    table = [0] * N
    table[0] = params.f % p
    pw = _powers(sub, xi, l)
    for u in range(1, l):
        table[l * u] = l * trace(sub, pw[u]) % p
    # the relative-trace factor only depends on c = i t0 mod l
    for c in range(1, l):
        rel = sub.zero
        for j in range(l):
            rel = sub.add(rel, pw[c * j % l])
        if not sub.is_zero(rel):
            raise InternalInconsistency("relative trace of a unit power did not vanish")
    if t0 % l == 0:
        raise InternalInconsistency("p^d = 1 mod l^2; the index-2 hypothesis fails")
    return table  # unit entries stay 0


# ---------------------------------------------------------------------------
# the character-sum identity for ax^n + b


def lemma21_check(
    ctx: FieldCtx, n: int, a: FieldElem, b: FieldElem, precision: int = 30, tol: float = 1e-8
) -> bool:
    """Compare ``sum_x psi(a x^n + b)`` with
    ``psi(b) * sum_{j=1}^{s-1} conj(chi^j)(a) G(chi^j)``, ``s = gcd(n, q-1)``.
    """
    if ctx.is_zero(a):
        raise InvalidInput("a must be nonzero")
    if n < 1:
        raise InvalidInput("n must be positive")
    q, p = ctx.q, ctx.p
    coords = power_coordinates(ctx)
    tf = np.array(ctx.trace_form, dtype=np.int64)
    tr = coords @ tf % p
    enc = coords @ (p ** np.arange(ctx.f, dtype=np.int64))
    a_enc = int(np.dot(a.coeffs, p ** np.arange(ctx.f)))
    log_a = int(np.nonzero(enc == a_enc)[0][0])
    tb = trace(ctx, b)
    s_all = np.arange(q - 1)
    # Tr(a x^n + b) = Tr(alpha^(log a + n s)) + Tr(b)
    lhs_t = (tr[(log_a + n * s_all) % (q - 1)] + tb) % p
    lhs_counts = np.bincount(lhs_t, minlength=p)
    lhs_counts[tb] += 1  # x = 0
    s = math.gcd(n, q - 1)
    with mpmath.workdps(precision + 10):
        zp = [mpmath.expjpi(mpmath.mpf(2 * t) / p) for t in range(p)]
        lhs = mpmath.fsum(int(c) * zp[t] for t, c in enumerate(lhs_counts))
        rhs = mpmath.mpc(0)
        for j in range(1, s):
            chi = [mpmath.expjpi(mpmath.mpf(2 * j * r) / s) for r in range(s)]
            grid = np.bincount((s_all % s) * p + tr, minlength=s * p).reshape(s, p)
            g = mpmath.fsum(int(grid[r, t]) * chi[r] * zp[t] for r in range(s) for t in range(p) if grid[r, t])
            rhs += mpmath.conj(chi[log_a % s]) * g
        rhs *= zp[tb]
        return bool(abs(lhs - rhs) <= tol * max(1, abs(lhs)))

