"""Acceptance criteria 1-8, one printed PASS/FAIL line each.

Every check asserts both correctness and its wall-clock budget.
"""

from __future__ import annotations

import json
import random
import time

import pytest

from blglue.glue import (bundle_from_matrix, cech_h1, formal_from_matrix, global_sections,
                         random_chart_change, random_transition, splitting_type, transition_of_triple)
from blglue.laurent import BFraction, CrtWitness, UnitWitness, classify_series_unit, invert_in_B
from blglue.matfact import (Equal, MatLaurent, NotEqual, Yes, cartan_type, coset_equal, det,
                            factorize_gdelta, membership_gl_power_series, random_b_unit, random_gl)
from blglue.ring import DualExtension, IntegersMod, PrimeField, Rationals

from test_cli import GOLDEN, run_case

F5 = PrimeField(5)
Z8 = IntegersMod(8)
F2E = DualExtension(PrimeField(2), 2)
F7 = PrimeField(7)
MATRIX_RINGS = [F5, Z8, F2E]


def report(capsys, number: int, title: str, ok: bool, elapsed: float, budget: float | None, detail: str):
    timing = f"{elapsed:.2f}s" + (f" / {budget:g}s" if budget is not None else "")
    verdict = "PASS" if ok and (budget is None or elapsed < budget) else "FAIL"
    with capsys.disabled():
        print(f"\n[acceptance {number}] {verdict}  {title}: {detail} ({timing})")
    return verdict == "PASS"


def test_criterion_1_unit_inversion(capsys):
    rings = [Rationals(), F5, Z8, F2E]
    samples = {}
    for ring in rings:
        rng = random.Random(f"accept1:{ring}")
        samples[ring] = [random_b_unit(ring, rng) for _ in range(500)]
    bad = 0
    t0 = time.perf_counter()
    for ring in rings:
        one = BFraction.one(ring)
        for f in samples[ring]:
            if f * invert_in_B(f) != one:
                bad += 1
    elapsed = time.perf_counter() - t0
    assert report(capsys, 1, "unit inversion f * f^-1 = 1", bad == 0, elapsed, 2.0,
                  f"{4 * 500 - bad}/{4 * 500} exact")


def test_criterion_2_factorization_roundtrip(capsys):
    failures = []
    t_orders = []
    t0 = time.perf_counter()
    for seed in range(200):
        ring = MATRIX_RINGS[seed % 3]
        n = 1 + (seed // 3) % 3
        gamma, _, _ = random_gl(n, "product", seed, ring, 32)
        res = factorize_gdelta(gamma, 32)
        back = res.g.expand(64) * res.delta
        window = min(back.precision(), 32)
        ok = (window > 0 and back.agrees_with(gamma, window)
              and membership_gl_power_series(res.delta) == Yes()
              and isinstance(classify_series_unit(det(res.g)), (UnitWitness, CrtWitness)))
        if not ok:
            failures.append(seed)
        t_orders.append(res.truncation_order)
    elapsed = time.perf_counter() - t0
    assert report(capsys, 2, "gamma = g * delta roundtrip", not failures, elapsed, 10.0,
                  f"{200 - len(failures)}/200 certified, truncation order max {max(t_orders)}")


def test_criterion_3_phi_roundtrips(capsys):
    bad_phi = bad_hat = 0
    t0 = time.perf_counter()
    for seed in range(100):
        ring = MATRIX_RINGS[seed % 3]
        n = 1 + seed % 3
        g = random_gl(n, "b_matrix", seed, ring)
        if transition_of_triple(bundle_from_matrix(g)).g != g:
            bad_phi += 1
        gamma, _, _ = random_gl(n, "product", seed, ring, 32)
        t = formal_from_matrix(gamma, 32)
        back = t.transition.g.expand(64) * t.formal_delta
        if not back.agrees_with(gamma, min(back.precision(), 32)):
            bad_hat += 1
    elapsed = time.perf_counter() - t0
    assert report(capsys, 3, "Phi and formal Phi roundtrips", bad_phi == bad_hat == 0, elapsed, 5.0,
                  f"Phi {100 - bad_phi}/100, formal {100 - bad_hat}/100")


def test_criterion_4_cohomology_laws(capsys):
    t0 = time.perf_counter()
    line_ok = all(
        global_sections(MatLaurent.from_lists(F7, [[{-d: 1}]]), 0, basis=False).dimension == max(0, d + 1)
        for d in range(-5, 11))
    rng = random.Random("accept4")
    euler_bad = 0
    for _ in range(100):
        g = random_transition(F7, 2, rng)
        v = det(g).lo
        for m in range(-3, 4):
            h0 = global_sections(g, m, basis=False).dimension
            h1 = cech_h1(g, m)
            if h0 - h1 != -v + 2 * m + 2:
                euler_bad += 1
    elapsed = time.perf_counter() - t0
    assert report(capsys, 4, "h0(O(d)) and Euler characteristic", line_ok and euler_bad == 0, elapsed, 30.0,
                  f"line bundles {'ok' if line_ok else 'WRONG'}, Euler {700 - euler_bad}/700")


def test_criterion_5_separation(capsys):
    J = MatLaurent.from_lists(F5, [[{1: 1}, 1], [0, {1: 1}]])
    t0 = time.perf_counter()
    ct = cartan_type(J)
    st = splitting_type(J)
    elapsed = time.perf_counter() - t0
    assert report(capsys, 5, "Cartan vs splitting witness", ct == (2, 0) and st == (-1, -1), elapsed, 1.0,
                  f"cartan {ct}, splitting {st}")


def test_criterion_6_coset_contract(capsys):
    cases = []
    for seed in range(100):
        ring = MATRIX_RINGS[seed % 3]
        n = 1 + (seed // 3) % 3
        gamma, _, _ = random_gl(n, "product", seed, ring, 32)
        u = random_gl(n, "power_series_unit", seed, ring, 32)
        cases.append((gamma, gamma * u, gamma.map(lambda x: x.shift(1))))
    eq = neq = 0
    t0 = time.perf_counter()
    for gamma, gu, zg in cases:
        eq += coset_equal(gamma, gu, 32) == Equal()
        neq += isinstance(coset_equal(gamma, zg, 32), NotEqual)
    elapsed = time.perf_counter() - t0
    assert report(capsys, 6, "coset contract", eq == neq == 100, elapsed, 5.0,
                  f"Equal {eq}/100, NotEqual {neq}/100")


def test_criterion_7_splitting_invariance(capsys):
    rng = random.Random("accept7")
    bad = 0
    t0 = time.perf_counter()
    for _ in range(50):
        n = rng.randint(2, 3)
        g = random_transition(F5, n, rng)
        a = random_chart_change(F5, n, rng, "w")
        b = random_chart_change(F5, n, rng, "z")
        if splitting_type(a * g * b) != splitting_type(g):
            bad += 1
    elapsed = time.perf_counter() - t0
    assert report(capsys, 7, "splitting type invariance", bad == 0, elapsed, 10.0, f"{50 - bad}/50 unchanged")


def test_criterion_8_cli_determinism(capsys):
    cases = json.loads((GOLDEN / "cases.json").read_text(encoding="utf-8"))
    t0 = time.perf_counter()
    mismatched = []
    for case in cases:
        first, second = run_case(case), run_case(case)
        expected = (GOLDEN / f"{case['name']}.out").read_text(encoding="utf-8")
        if not first == second == expected:
            mismatched.append(case["name"])
    elapsed = time.perf_counter() - t0
    assert report(capsys, 8, "CLI golden determinism", not mismatched, elapsed, None,
                  f"{len(cases) - len(mismatched)}/{len(cases)} byte-identical twice")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
