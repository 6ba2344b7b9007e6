"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
The lines are also collected into the terminal summary.
"""

from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from friendly_split.circle import Configuration, energy, expected_cut
from friendly_split.engine import (
    CANONICAL,
    ROTATION,
    STRICT,
    EngineFault,
    config_from_cut,
    decompose,
    default_budget,
    folklore_partition,
)
from friendly_split.graph import (
    complete,
    complete_bipartite,
    cross_edges,
    cycle,
    friendship,
    frucht,
    lcf,
    path,
    petersen,
    random_gnp,
    random_regular,
    thomassen32,
)
from friendly_split.heuristics import COSINE_G, TENT_G, cosine_energy, cosine_gradient, descend_cosine, guarantee_ratio
from friendly_split.oracles import enumerate_decompositions, maxcut_bruteforce, monte_carlo_round
from friendly_split.verifier import check_majority_partition, check_properties, judicious_bounds, judicious_factor

from helpers import all_connected_graphs, random_corpus

RESULTS: dict[str, tuple[bool, str]] = {}


def report(key: str, ok: bool, detail: str) -> None:
    RESULTS[key] = (ok, detail)
    print(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    graphs = []
    for n in range(1, 6):
        graphs += all_connected_graphs(n)
    graphs += random_corpus(500)
    return graphs


@pytest.fixture(scope="module")
def runs(corpus):
    """(graph, decomposition, trace, fault message) for every corpus graph, plus elapsed seconds."""
    out = []
    t0 = time.perf_counter()
    for g in corpus:
        try:
            d, trace = decompose(g)
            out.append((g, d, trace, None))
        except EngineFault as exc:
            out.append((g, None, exc.trace, str(exc)))
    return out, time.perf_counter() - t0


def test_criterion_01_exhaustive_small_and_random(runs):
    data, elapsed = runs
    by_n = {n: sum(1 for g, *_ in data if g.n == n) for n in range(1, 6)}
    faults = [(g, msg) for g, d, _, msg in data if msg]
    t0 = time.perf_counter()
    bad = [g for g, d, _, msg in data if not msg and not check_properties(g, d).passed]
    elapsed += time.perf_counter() - t0
    over_budget = [g for g, d, t, msg in data if not msg and t.cost > default_budget(g)]
    ok = (
        by_n == {1: 1, 2: 1, 3: 4, 4: 38, 5: 728}
        and len(data) == 772 + 500
        and not faults and not bad and not over_budget
        and elapsed < 120
    )
    report(
        "1", ok,
        f"{len(data)} graphs (n<=5 counts {list(by_n.values())}), faults={len(faults)}, "
        f"property failures={len(bad)}, over budget={len(over_budget)}, {elapsed:.1f}s",
    )


def test_criterion_02_enumeration_containment(runs):
    data, _ = runs
    t0 = time.perf_counter()
    checked, missing = 0, []
    for g, d, _, msg in data:
        if g.n > 10 or msg:
            continue
        found = set(enumerate_decompositions(g).value)
        checked += 1
        if not found or d not in found:
            missing.append(g)
    elapsed = time.perf_counter() - t0
    ok = not missing and elapsed < 300 and checked > 772
    report("2", ok, f"{checked} graphs with n<=10, engine output missing in {len(missing)}, {elapsed:.1f}s")


FIGURES = {
    "K5": complete(5),
    "C5": cycle(5),
    "Petersen": petersen(),
    "Frucht": frucht(),
    "friendship(3)": friendship(3),
}


@pytest.fixture(scope="module")
def figure_runs():
    return {name: (g, decompose(g)[0]) for name, g in FIGURES.items()}


def test_criterion_03_figures(figure_runs):
    checks = {}
    g, d = figure_runs["K5"]
    checks["K5 sizes (2,2,1)"] = d.sizes() == (2, 2, 1)
    g, d = figure_runs["C5"]
    checks["C5 |C|=1"] = len(d.c) == 1
    for name in ("Petersen", "Frucht"):
        checks[f"{name} C empty"] = not figure_runs[name][1].c
    g, d = figure_runs["friendship(3)"]
    rep = check_properties(g, d)
    ec = rep.edge_counts
    checks["friendship C={center}"] = d.c == {0}
    checks["friendship E(A∪B,C)=2E(A,B)=6"] = ec["E(A∪B,C)"] == 2 * ec["E(A,B)"] == 6
    lhs5 = ec["E(A∪B,C)"] + 2 * ec["E(A,A)"] + 2 * ec["E(B,B)"]
    checks["friendship equality in (5)"] = rep.passed and lhs5 == 2 * ec["E(A,B)"]
    failed = [k for k, v in checks.items() if not v]
    report("3", not failed, "all figure checks hold" if not failed else f"failed: {failed}")


PROP5_FIXTURES = [
    complete(2), complete(3), complete(4), complete(5), complete(7),
    cycle(4), cycle(5), cycle(9), path(6), petersen(),
    frucht(), friendship(3), friendship(5), complete_bipartite(2, 3), complete_bipartite(4, 4),
    lcf(14, [5, -5]), thomassen32(), random_gnp(12, 0.3, 1), random_gnp(16, 0.25, 2), random_regular(20, 3, 3),
]


def test_criterion_04_expected_cut_identity():
    rng = random.Random(2024)
    total, bad = 0, 0
    for g in PROP5_FIXTURES:
        for _ in range(50):
            den = rng.randint(1, 97)
            c = Configuration(Fraction(rng.randrange(den), den) for _ in range(g.n))
            total += 1
            bad += 2 * g.m - 4 * expected_cut(g, c) != energy(g, c)
    report("4", total == 1000 and bad == 0, f"{total} configurations on {len(PROP5_FIXTURES)} graphs, {bad} mismatches")


def _pairs_kept(before: Configuration, after: Configuration) -> bool:
    n = len(before)
    for i in range(n):
        for j in range(i + 1, n):
            diff = (before[i] - before[j]) % 1
            if diff == 0 and after[i] != after[j]:
                return False
            if diff == Fraction(1, 2) and (after[i] - after[j]) % 1 != Fraction(1, 2):
                return False
    return True


def test_criterion_05_descent_path(runs):
    data, _ = runs
    problems = {"increase": 0, "strict<2": 0, "collisions>n-1": 0, "pair broken": 0, "energy mismatch": 0}
    strict_events = 0
    for g, _, trace, msg in data:
        if msg:
            problems["increase"] += 1
            continue
        steps = trace.steps
        phase_r = 0
        for prev, step in zip(steps, steps[1:]):
            if step.energy > prev.energy:
                problems["increase"] += 1
            if step.energy != energy(g, step.config):
                problems["energy mismatch"] += 1
            if step.kind == STRICT:
                strict_events += 1
                if prev.energy - step.energy < 2:
                    problems["strict<2"] += 1
            if step.kind == ROTATION:
                phase_r = phase_r + 1 if prev.kind == ROTATION and prev.round == step.round else 1
                if phase_r > g.n - 1:
                    problems["collisions>n-1"] += 1
            if step.kind in (ROTATION, CANONICAL) and not _pairs_kept(prev.config, step.config):
                problems["pair broken"] += 1
    ok = not any(problems.values())
    report("5", ok, f"{len(data)} traces, {strict_events} strict descents, problems {problems}")


def test_criterion_06_judicious_bound(runs, figure_runs):
    data, _ = runs
    decomps = [(g, d) for g, d, _, msg in data if not msg] + list(figure_runs.values())
    below = [g for g, d in decomps if g.m and judicious_bounds(g, d).cut_value < judicious_factor(g.max_degree) * g.m]
    g, d = figure_runs["Petersen"]
    mc = maxcut_bruteforce(g).value
    rep = judicious_bounds(g, d, maxcut=mc)
    petersen_ok = (
        rep.lower_bound == Fraction(55, 6)
        and rep.cut_value >= 10
        and mc == 12
        and Fraction(rep.cut_value, mc) >= Fraction(1, 2) + Fraction(1, 9)
    )
    ok = not below and petersen_ok
    report(
        "6", ok,
        f"{len(decomps)} decompositions, {len(below)} below bound; Petersen cut {rep.cut_value} >= 55/6, maxcut {mc}",
    )


def test_criterion_07_init_from_maxcut(corpus):
    checked, bad_energy, with_strict = 0, [], []
    for g in corpus:
        if g.n > 10:
            continue
        r = maxcut_bruteforce(g)
        a, _ = r.partition
        _, trace = decompose(g, config_from_cut(g.n, a))
        checked += 1
        if trace.initial_energy != 2 * g.m - 4 * r.value:
            bad_energy.append(g)
        if trace.count(STRICT):
            with_strict.append(g)
    ok = not bad_energy and not with_strict
    report("7", ok, f"{checked} graphs, energy mismatches {len(bad_energy)}, runs with strict descents {len(with_strict)}")


def test_criterion_08_folklore_cubic():
    rng = random.Random(8)
    bad = []
    sizes = []
    for i in range(50):
        n = 2 * rng.randint(2, 50)
        g = random_regular(n, 3, seed=i)
        sizes.append(n)
        a, b, moves = folklore_partition(g)
        if moves > g.m or not check_majority_partition(g, a, b).passed:
            bad.append((n, i))
    report("8", not bad, f"50 cubic graphs, n in [{min(sizes)}, {max(sizes)}], failures {bad}")


def test_criterion_09_heuristics():
    checks = {}
    tent = guarantee_ratio(TENT_G)
    xs = np.arange(1, 10_001) * (math.pi / 10_000)
    tent_grid = (2 / math.pi) * xs / (1 - TENT_G(xs))
    checks["tent ratio = 1"] = abs(tent - 1) <= 1e-12 and np.all(np.abs(tent_grid - 1) <= 1e-12)

    x = np.linspace(math.pi / 1_000_000, math.pi, 1_000_000)
    scan = float(np.min((2 / math.pi) * x / (1 - np.cos(x))))
    cos_ratio = guarantee_ratio(COSINE_G)
    checks["cos ratio vs 1e6 grid"] = abs(cos_ratio - scan) <= 1e-3

    rng = np.random.default_rng(9)
    fixtures = [complete(5), petersen(), cycle(7), friendship(3), random_gnp(12, 0.4, 5)]
    worst = 0.0
    for k in range(100):
        g = fixtures[k % len(fixtures)]
        theta = rng.uniform(0, 2 * math.pi, g.n)
        grad = cosine_gradient(g, theta)
        fd = np.empty(g.n)
        h = 1e-6
        for i in range(g.n):
            up, dn = theta.copy(), theta.copy()
            up[i] += h
            dn[i] -= h
            fd[i] = (cosine_energy(g, up) - cosine_energy(g, dn)) / (2 * h)
        worst = max(worst, float(np.linalg.norm(grad - fd) / max(np.linalg.norm(fd), 1e-300)))
    checks["gradient vs finite differences"] = worst <= 1e-5

    k23 = complete_bipartite(2, 3)
    target = 2 * k23.m - 4 * maxcut_bruteforce(k23).value
    finals = [descend_cosine(k23, seed)[1][-1] for seed in range(10)]
    checks["K2,3 reaches -12"] = target == -12 and all(abs(f - target) <= 1e-4 for f in finals)

    failed = [k for k, v in checks.items() if not v]
    report(
        "9", not failed,
        f"tent {tent!r}, cos {cos_ratio:.10f} vs scan {scan:.10f}, grad rel err {worst:.2e}, "
        f"K2,3 worst {max(abs(f - target) for f in finals):.1e}" + (f"; failed {failed}" if failed else ""),
    )


def test_criterion_10_monte_carlo():
    fixtures = [
        (complete(2), [0, Fraction(1, 2)]),
        (complete(4), [0, 0, 0, 0]),
        (cycle(5), [Fraction(k, 5) for k in range(5)]),
        (complete(5), [0, Fraction(1, 3), Fraction(1, 2), Fraction(3, 4), Fraction(1, 8)]),
        (petersen(), [Fraction(k, 10) for k in range(10)]),
        (frucht(), [Fraction(k * k % 13, 13) for k in range(12)]),
        (friendship(3), [Fraction(1, 4)] + [0, Fraction(1, 2)] * 3),
        (complete_bipartite(2, 3), [0, Fraction(1, 7), Fraction(1, 2), Fraction(4, 7), Fraction(3, 5)]),
        (path(6), [Fraction(k, 6) for k in range(6)]),
        (random_gnp(12, 0.4, 7), [Fraction(k * 5 % 17, 17) for k in range(12)]),
    ]
    samples = 100_000
    worst, bad = 0.0, []
    for i, (g, angles) in enumerate(fixtures):
        c = Configuration(angles)
        exact = float(expected_cut(g, c))
        mean, var = monte_carlo_round(g, c, samples, seed=i)
        se = math.sqrt(var / samples)
        if abs(mean - exact) > 4 * se:
            bad.append(i)
        if se:
            worst = max(worst, abs(mean - exact) / se)
    report("10", not bad, f"{len(fixtures)} fixtures at 1e5 samples, worst |z| {worst:.2f}, outside 4 SE: {bad}")


def test_partition_cut_sanity(figure_runs):
    # not a criterion: the cut reported by the bound is the A∪C / B cut
    g, d = figure_runs["K5"]
    assert judicious_bounds(g, d).cut_value == cross_edges(g, d.a | d.c, d.b) == 6


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
