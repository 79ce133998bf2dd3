"""Exit criteria of the build, one test per criterion.

Each test records a PASS/FAIL line (shown in the pytest terminal summary)
and then asserts.  Runtime budgets are part of the criteria.
"""
import random
import time
from fractions import Fraction
from itertools import permutations
from math import comb, factorial

from upset.embedder import grid_embed, search_embedding, verify_embedding
from upset.geometry import Point
from upset.graphs import PlanarGraph, build_gadget, degree_profile, is_three_connected
from upset.montecarlo import Mode, TrialConfig, run_trials, theorem1_experiment
from upset.permutations import exact_monotone_probability, lis, theorem_threshold, union_bound
from upset.witness import monotone_witness

from oracles import brute_force_embeddable, lis_dp, lis_dp_numpy, lis_subsets, random_instance


def test_01_lis_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    exhaustive = 0
    mismatches = 0
    for m in range(0, 9):
        for p in permutations(range(1, m + 1)):
            a = lis(p)
            if not (a == lis_dp(p) == lis_subsets(p)):
                mismatches += 1
            exhaustive += 1
    rng = random.Random(1)
    for _ in range(10_000):
        m = rng.randint(1, 1000)
        p = list(range(1, m + 1))
        rng.shuffle(p)
        if lis(p) != lis_dp_numpy(p):
            mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < 120
    criterion(1, "LIS oracle equivalence", ok,
              f"{exhaustive} exhaustive + 10000 random, {mismatches} mismatches, {elapsed:.0f}s")
    assert mismatches == 0
    assert elapsed < 120


def test_02_union_bound_exact(criterion):
    t0 = time.perf_counter()
    violations = []
    for m in range(2, 9):
        for ell in range(2, m + 1):
            exact = exact_monotone_probability(m, ell)
            bound = min(Fraction(1), Fraction(2 * comb(m, ell), factorial(ell)))
            assert union_bound(m, ell) == bound
            if not exact <= bound:
                violations.append((m, ell))
    eq = exact_monotone_probability(4, 4) == union_bound(4, 4) == Fraction(1, 12)
    elapsed = time.perf_counter() - t0
    ok = not violations and eq and elapsed < 60
    criterion(2, "union bound vs exact enumeration", ok,
              f"violations={violations}, (4,4) equality={eq}, {elapsed:.0f}s")
    assert not violations and eq and elapsed < 60


def test_03_gadget_validity(criterion):
    t0 = time.perf_counter()
    details = []
    good = True
    for n in (12, 24, 36, 48, 60, 120):
        g = build_gadget(n)
        k2 = n // 3
        profile_ok = degree_profile(g) == [4 if g.labels[v][0] in (1, k2) else 6 for v in range(n)]
        conn_ok = is_three_connected(g) if n <= 48 else True
        e = grid_embed(g)
        in_grid = all(0 <= p.x <= 2 * n - 4 and 0 <= p.y <= n - 2 for p in e.placement)
        row = g.m == 3 * n - 6 and profile_ok and conn_ok and in_grid and verify_embedding(e)
        good &= row
        details.append(f"{n}:{'ok' if row else 'BAD'}")
    elapsed = time.perf_counter() - t0
    ok = good and elapsed < 120
    criterion(3, "gadget validity", ok, f"{' '.join(details)}, {elapsed:.0f}s")
    assert good and elapsed < 120


def test_04_witness_end_to_end(criterion):
    sizes = {}
    good = True
    for n in range(12, 121, 12):
        e = grid_embed(build_gadget(n))
        w = monotone_witness(e)
        pts = list(w.points)
        images = set(e.placement)
        inc = all(a.x < b.x and a.y < b.y for a, b in zip(pts, pts[1:]))
        dec = all(a.x < b.x and a.y > b.y for a, b in zip(pts, pts[1:]))
        row = len(pts) >= n // 12 and set(pts) <= images and (inc or dec)
        good &= row
        sizes[n] = len(pts)
    criterion(4, "monotone witness end to end", good, f"witness sizes {sizes}")
    assert good


def test_05_embeddability_vs_brute_force(criterion):
    t0 = time.perf_counter()
    rng = random.Random(2025)
    agree = yes = 0
    disagreements = []
    for i in range(200):
        n, edges, pts = random_instance(rng)
        out = search_embedding(PlanarGraph(n, edges), [Point(*p) for p in pts])
        truth = brute_force_embeddable(n, edges, pts)
        if out.found == truth and (not out.found or verify_embedding(out.embedding)):
            agree += 1
        else:
            disagreements.append(i)
        yes += truth
    elapsed = time.perf_counter() - t0
    ok = agree == 200 and elapsed < 300
    criterion(5, "embeddability vs brute force", ok,
              f"{agree}/200 agree ({yes} embeddable, {200 - yes} not), {elapsed:.0f}s")
    assert not disagreements and elapsed < 300


def test_06_monte_carlo_calibration(criterion):
    t0 = time.perf_counter()
    target = 1 / 12
    covered = 0
    ps = []
    for seed in range(10):
        rep = run_trials(TrialConfig(4, 4, 100_000, seed, Mode.POINTS))
        lo, hi = rep.wilson95
        covered += lo <= target <= hi
        ps.append(round(rep.empirical_p, 4))
    elapsed = time.perf_counter() - t0
    ok = covered >= 9 and elapsed < 60
    criterion(6, "Monte Carlo calibration at 1/12", ok, f"{covered}/10 intervals cover, p={ps}, {elapsed:.0f}s")
    assert covered >= 9 and elapsed < 60


def test_07_tail_bound_consistency(criterion):
    t0 = time.perf_counter()
    rep = run_trials(TrialConfig(100, 55, 1_000_000, 7, Mode.POINTS))
    elapsed = time.perf_counter() - t0
    ok = rep.hits == 0 and elapsed < 600
    criterion(7, "zero hits at m=100, ell=55", ok,
              f"hits={rep.hits}/10^6, bound 2*4^-55={rep.bounds['claim3']:.3g}, {elapsed:.0f}s")
    assert rep.hits == 0 and elapsed < 600


def test_08_threshold_arithmetic(criterion):
    a, b, c = theorem_threshold(24), theorem_threshold(131), theorem_threshold(1305)
    ok = (
        (a.m_max, float(a.tail)) == (0, 0.5)
        and b.m_max == 1
        and c.m_max == 100
        and not (a.boundary_flag or b.boundary_flag or c.boundary_flag)
    )
    criterion(8, "theorem threshold arithmetic", ok, f"m_max = {a.m_max}, {b.m_max}, {c.m_max}; tail(24) = {a.tail}")
    assert ok


def test_09_certification_demo(criterion):
    t0 = time.perf_counter()
    rep = theorem1_experiment(1200, 1000, 9, m=2000, ell=100)
    elapsed = time.perf_counter() - t0
    ok = rep.certificate_rate >= 0.95 and elapsed < 120
    criterion(9, "non-universality certification demo", ok,
              f"certificate_rate={rep.certificate_rate:.3f}, mean max(lis,lds)={rep.report.mean_longest:.1f}, {elapsed:.0f}s")
    assert rep.ell == 100 and rep.m == 2000
    assert rep.certificate_rate >= 0.95 and elapsed < 120


def test_10_lis_concentration(criterion):
    t0 = time.perf_counter()
    rep = run_trials(TrialConfig(10_000, 1, 1000, 10, Mode.POINTS))
    elapsed = time.perf_counter() - t0
    mean = rep.mean_longest
    ok = 170 <= mean <= 210 and elapsed < 120
    criterion(10, "LIS concentration at m=10^4", ok, f"mean max(lis,lds)={mean:.2f} in [170, 210], {elapsed:.0f}s")
    assert 170 <= mean <= 210 and elapsed < 120
