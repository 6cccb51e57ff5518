"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

from __future__ import annotations

import random
import time
from collections import Counter

import pytest
from sympy import isprime, primerange

from index2walsh import validate_instance
from index2walsh.algebra import embed_complex, norm_squared
from index2walsh.closed_form import (
    LINE_ORDER,
    NONZERO_CLASSES,
    corollary_applies,
    corollary_spectrum,
    frequencies,
    gauss_sum_index2,
    quadratic_gauss,
    spectrum,
    spectrum_at_zero,
    tabulated_values,
    trace_beta_table,
    walsh_value_via_eq32,
)
from index2walsh.gf import build_field
from index2walsh.oracle import (
    brute_gauss_sum,
    brute_quadratic_gauss,
    brute_walsh_spectrum,
    count_matrix,
    cyclotomic_check,
    in_field_trace_table,
    lemma21_check,
    params_for_period,
    period_in_field,
)
from index2walsh.params import class_number, multiplicative_order

from oracles import reduced_form_count


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_1_oracle_equivalence_2_7(report):
    t0 = time.perf_counter()
    params = validate_instance(2, 7)
    ctx = build_field(2, 21, 0, N=49)
    anchored = params_for_period(params, period_in_field(params, ctx))
    brute = brute_walsh_spectrum(ctx, count_matrix(ctx, 49))
    elapsed = time.perf_counter() - t0

    freq = frequencies(anchored)
    table_path = Counter()
    class_sum_path = Counter()
    tab = tabulated_values(anchored)
    for k in LINE_ORDER:
        table_path[tab[k]] += freq[k]
        v = spectrum_at_zero(anchored) if k not in NONZERO_CLASSES else walsh_value_via_eq32(anchored, k)
        class_sum_path[v] += freq[k]
    expected_freq = [1, 898779, 898779, 42799, 128397, 128397]
    ok = (
        brute.multiset() == table_path == class_sum_path == spectrum(anchored).multiset()
        and [freq[k] for k in LINE_ORDER] == expected_freq
        and len(brute.multiset()) == 5
        and elapsed < 60
    )
    report(1, ok, f"{len(brute.multiset())} distinct values, brute force in {elapsed:.1f}s")


def test_criterion_2_f0_is_minus_16512(report):
    params = validate_instance(2, 7)
    ctx = build_field(2, 21, 0, N=49)
    brute = brute_walsh_spectrum(ctx, count_matrix(ctx, 49)).at_zero
    closed = spectrum_at_zero(params)
    ok = brute == -16512 and closed == -16512
    report(2, ok, f"brute f^(0) = {brute}, closed form = {closed}, expected -16512")


def test_criterion_3_symbolic_invariants(report):
    instances = [(2, 7), (11, 7), (3, 107)]
    for l in (7, 11, 19, 23, 31, 43, 47):
        instances += [(p, l) for p in primerange(2, 40) if p != l and multiplicative_order(p, l * l) == l * (l - 1) // 2]
    instances = sorted(set(instances))
    bad = []
    for p, l in instances:
        params = validate_instance(p, l)
        table = spectrum(params)
        q = params.q
        if not (table.total_frequency() == q and table.mean_sum() == q and table.parseval_sum() == q * q):
            bad.append((p, l))
    big = validate_instance(3, 107)
    ok = not bad and (big.h, big.f) == (3, 5671)
    report(3, ok, f"{len(instances)} instances, failures {bad}; (3,107): h={big.h} f={big.f}")


def test_criterion_4_gauss_sums(report):
    params = validate_instance(2, 7)
    ctx = build_field(2, 21, 0, N=49)
    anchored = params_for_period(params, period_in_field(params, ctx))
    counts = count_matrix(ctx, 49)
    units = [u for u in range(1, 49) if u % 7]
    js = sorted(set(random.Random(4).sample(units, 12) + [7 * u for u in range(1, 7)]))
    worst = 0.0
    exact = True
    for j in js:
        closed = gauss_sum_index2(anchored, j)
        exact &= norm_squared(closed) == params.q
        g, _ = brute_gauss_sum(ctx, counts, j, 30)
        c = embed_complex(closed, 30)
        worst = max(worst, float(abs(g - c) / abs(c)))
    quad = 0.0
    for p, f in ((3, 2), (5, 2), (3, 3), (7, 2), (11, 2)):
        quad = max(quad, float(abs(brute_quadratic_gauss(build_field(p, f)) - quadratic_gauss(p, f).embed())))
    ok = exact and worst < 1e-6 and quad < 1e-8 and len(js) >= 10
    report(4, ok, f"{len(js)} exponents, max rel err {worst:.2e}, |G|^2=q exact: {exact}; quadratic max err {quad:.2e}")


def test_criterion_5_cyclotomic_numbers(report):
    rng = random.Random(5)
    pool = sorted({p**e for p in primerange(3, 10**6) for e in range(1, 20) if p**e < 10**6})
    sample = rng.sample(pool, 50)
    bad = [q for q in sample if not cyclotomic_check(q)[0]]
    report(5, not bad, f"{len(sample)} odd prime powers below 10^6, mismatches {bad}")


def test_criterion_6_trace_tables(report):
    params = validate_instance(2, 7)
    ctx = build_field(2, 21, 0, N=49)
    anchored = params_for_period(params, period_in_field(params, ctx))
    ok_27 = in_field_trace_table(anchored, ctx) == trace_beta_table(anchored).as_list()
    generic = validate_instance(11, 7)
    matched = params_for_period(generic, period_in_field(generic))
    ok_117 = in_field_trace_table(generic) == trace_beta_table(matched).as_list()
    report(6, ok_27 and ok_117, f"(2,7) over F_2^21: {ok_27}; (11,7) over F_11^3: {ok_117}")


def test_criterion_7_character_sum_identity(report):
    rng = random.Random(7)
    results = []
    for p, f in ((7, 1), (3, 2)):
        ctx = build_field(p, f)
        for _ in range(12):
            a = ctx.pow(ctx.alpha, rng.randrange(ctx.q - 1))
            b = ctx.elem([rng.randrange(p) for _ in range(f)])
            results.append(lemma21_check(ctx, rng.randrange(1, 17), a, b, tol=1e-8))
    report(7, all(results) and len(results) >= 20, f"{sum(results)}/{len(results)} triples on F_7 and F_9")


def test_criterion_8_class_numbers(report):
    ls = [l for l in primerange(5, 200) if l % 4 == 3]
    bad = [l for l in ls if class_number(l) != reduced_form_count(-l)]
    ok = not bad and class_number(7) == 1 and class_number(107) == 3
    report(8, ok, f"{len(ls)} values of l, mismatches {bad}")


def test_criterion_9_corollary(report):
    hits, bad = [], []
    for l in primerange(7, 200):
        if l % 4 != 3:
            continue
        m = (1 + l) // 4
        for p in primerange(2, m + 1):
            h = class_number(l)
            if p**h != m or not isprime(p) or multiplicative_order(p, l * l) != l * (l - 1) // 2:
                continue
            for sign in (1, -1):
                params = validate_instance(p, l, sign)
                if corollary_applies(params):
                    hits.append((p, l, sign))
                    if corollary_spectrum(params) != spectrum(params).multiset():
                        bad.append((p, l, sign))
    report(9, bool(hits) and not bad, f"{len(hits)} applicable (p, l, sign), mismatches {bad}")
