"""Independent checks of a decomposition and the cut bounds it implies.

Everything here is plain counting over the graph; nothing consults the
engine or its trace.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .circle import format_rational
from .engine import Decomposition
from .graph import Graph, cross_edges, degree_into

SUBSET_SAMPLES = 256
EXHAUSTIVE_SUBSET_LIMIT = 12


@dataclass
class Check:
    passed: bool
    witnesses: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        out = {"pass": self.passed, "witnesses": [list(w) if isinstance(w, tuple) else w for w in self.witnesses]}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class PropertyReport:
    checks: dict[str, Check]
    tallies: dict[int, dict[str, int]]
    edge_counts: dict[str, int]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, c in self.checks.items() if not c.passed]

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "properties": {k: c.to_json() for k, c in self.checks.items()},
            "edge_counts": dict(self.edge_counts),
            "tallies": {str(v): t for v, t in sorted(self.tallies.items())},
        }


def _check_partition(g: Graph, d: Decomposition) -> None:
    if d.a | d.b | d.c != frozenset(range(g.n)) or d.n != g.n:
        raise ValueError("decomposition does not partition the vertex set")


def check_properties(g: Graph, d: Decomposition) -> PropertyReport:
    _check_partition(g, d)
    a, b, c = d.a, d.b, d.c
    tallies = {
        v: {"A": degree_into(g, v, a), "B": degree_into(g, v, b), "C": degree_into(g, v, c)}
        for v in range(g.n)
    }
    bad1 = [v for v in sorted(a) if tallies[v]["B"] < tallies[v]["A"] + max(1, tallies[v]["C"])]
    bad2 = [v for v in sorted(b) if tallies[v]["A"] < tallies[v]["B"] + max(1, tallies[v]["C"])]
    bad3 = [(u, v) for u, v in g.edges if u in c and v in c]
    bad4 = [v for v in sorted(c) if tallies[v]["A"] != tallies[v]["B"]]

    counts = {
        "E(A,A)": cross_edges(g, a, a),
        "E(B,B)": cross_edges(g, b, b),
        "E(A,B)": cross_edges(g, a, b),
        "E(A,C)": cross_edges(g, a, c),
        "E(B,C)": cross_edges(g, b, c),
        "E(A∪B,C)": cross_edges(g, a | b, c),
        "E(C,C)": cross_edges(g, c, c),
    }
    counts["E(H)"] = counts["E(A,A)"] + counts["E(B,B)"] + counts["E(A,B)"]
    lhs5 = counts["E(A∪B,C)"] + 2 * counts["E(A,A)"] + 2 * counts["E(B,B)"]
    rhs5 = 2 * counts["E(A,B)"]
    ok5 = lhs5 <= rhs5
    note5 = f"{lhs5} <= {rhs5}" + (" (equality)" if lhs5 == rhs5 else "")
    checks = {
        "1": Check(not bad1, bad1),
        "2": Check(not bad2, bad2),
        "3": Check(not bad3, bad3),
        "4": Check(not bad4, bad4),
        "5": Check(ok5, [] if ok5 else [lhs5, rhs5], note5),
    }
    return PropertyReport(checks, tallies, counts)


def _subset_ok(g: Graph, s: frozenset[int], own: frozenset[int], other: frozenset[int], c: frozenset[int]) -> bool:
    lhs = cross_edges(g, s, c) + cross_edges(g, s, own) + cross_edges(g, s, s)
    return lhs <= cross_edges(g, s, other)


def _subsets(side: frozenset[int], samples: int, rng: random.Random):
    members = sorted(side)
    if len(members) <= EXHAUSTIVE_SUBSET_LIMIT:
        for k in range(len(members) + 1):
            for combo in combinations(members, k):
                yield frozenset(combo)
        return
    yield frozenset()
    yield side
    for v in members:
        yield frozenset({v})
    for _ in range(samples):
        yield frozenset(v for v in members if rng.random() < 0.5)


@dataclass
class SubsetReport:
    passed: bool
    checked: int
    witness: tuple[str, list[int]] | None = None


def check_subset_inequalities(
    g: Graph, d: Decomposition, samples: int = SUBSET_SAMPLES, seed: int = 0
) -> SubsetReport:
    """E(S,C) + E(S,A) + E(S,S) <= E(S,B) for subsets S of A, and the mirror for B.

    Exhaustive when a side has at most 12 vertices, otherwise the empty set,
    the full side, all singletons and ``samples`` random subsets.
    """
    _check_partition(g, d)
    rng = random.Random(seed)
    checked = 0
    for name, own, other in (("A", d.a, d.b), ("B", d.b, d.a)):
        for s in _subsets(own, samples, rng):
            checked += 1
            if not _subset_ok(g, s, own, other, d.c):
                return SubsetReport(False, checked, (name, sorted(s)))
    return SubsetReport(True, checked)


@dataclass
class BoundReport:
    """Cut between A∪C and B against the judicious bound.

    ``steps`` maps each inequality of the counting argument to its
    ``(lhs, rhs)`` pair, read as ``lhs >= rhs`` (or equality for ``==`` keys).
    """

    cut_value: int
    edges: int
    max_degree: int
    lower_bound: Fraction
    ratio_vs_edges: Fraction | None
    steps: dict[str, tuple[Fraction, Fraction]]
    maxcut_value: int | None = None
    maxcut_lower_bound: Fraction | None = None
    ratio_vs_maxcut: Fraction | None = None

    @property
    def meets_edge_bound(self) -> bool:
        return self.cut_value >= self.lower_bound

    @property
    def meets_maxcut_bound(self) -> bool | None:
        if self.maxcut_lower_bound is None:
            return None
        return self.cut_value >= self.maxcut_lower_bound

    @staticmethod
    def _holds(key: str, lhs: Fraction, rhs: Fraction) -> bool:
        return lhs == rhs if "==" in key else lhs >= rhs

    def failed_steps(self) -> list[str]:
        return [k for k, (lhs, rhs) in self.steps.items() if not self._holds(k, lhs, rhs)]

    @property
    def passed(self) -> bool:
        return self.meets_edge_bound and not self.failed_steps() and self.meets_maxcut_bound is not False

    def to_json(self) -> dict:
        def fmt(x):
            return format_rational(x) if isinstance(x, Fraction) else x

        out = {
            "pass": self.passed,
            "cut": self.cut_value,
            "edges": self.edges,
            "max_degree": self.max_degree,
            "lower_bound": fmt(self.lower_bound),
            "ratio_vs_edges": fmt(self.ratio_vs_edges) if self.ratio_vs_edges is not None else None,
            "steps": {k: {"lhs": fmt(a), "rhs": fmt(b), "pass": self._holds(k, a, b)} for k, (a, b) in self.steps.items()},
        }
        if self.maxcut_value is not None:
            out["maxcut"] = self.maxcut_value
            out["maxcut_lower_bound"] = fmt(self.maxcut_lower_bound)
            out["ratio_vs_maxcut"] = fmt(self.ratio_vs_maxcut) if self.ratio_vs_maxcut is not None else None
        return out


def judicious_factor(max_degree: int) -> Fraction:
    """1/2 + 1/(3*Delta)."""
    return Fraction(1, 2) + Fraction(1, 3 * max_degree)


def judicious_bounds(g: Graph, d: Decomposition, maxcut: int | None = None) -> BoundReport:
    """Compare the cut #E(A∪C, B) with (1/2 + 1/(3Δ))|E| and recheck each counting step."""
    report = check_properties(g, d)
    if not report.passed:
        raise ValueError(f"decomposition fails properties {report.failed()}")
    a, b, c = d.a, d.b, d.c
    m, delta = g.m, g.max_degree
    cut = cross_edges(g, a | c, b)
    factor = judicious_factor(delta) if m else Fraction(0)
    ec = report.edge_counts
    half_ab = Fraction(len(a) + len(b), 2)
    steps: dict[str, tuple[Fraction, Fraction]] = {
        "E(A,B) >= E(A,A)+E(B,B)+(|A|+|B|)/2": (
            Fraction(ec["E(A,B)"]), ec["E(A,A)"] + ec["E(B,B)"] + half_ab),
        "E(A,C) == E(B,C)": (Fraction(ec["E(A,C)"]), Fraction(ec["E(B,C)"])),
        "2*cut-(|A|+|B|)/2 >= |E|": (2 * cut - half_ab, Fraction(m)),
        "Δ(|A|+|B|)/2 >= |E|-E(A,C)": (delta * half_ab, Fraction(m - ec["E(A,C)"])),
        "|E|/3 >= E(A,C)": (Fraction(m, 3), Fraction(ec["E(A,C)"])),
    }
    if m:
        steps["(|A|+|B|)/2 >= 2|E|/(3Δ)"] = (half_ab, Fraction(2 * m, 3 * delta))
    rep = BoundReport(
        cut_value=cut,
        edges=m,
        max_degree=delta,
        lower_bound=factor * m,
        ratio_vs_edges=Fraction(cut, m) if m else None,
        steps=steps,
    )
    if maxcut is not None:
        rep.maxcut_value = maxcut
        rep.maxcut_lower_bound = factor * maxcut
        rep.ratio_vs_maxcut = Fraction(cut, maxcut) if maxcut else None
    return rep


def check_even_degree_C(g: Graph, d: Decomposition) -> Check:
    bad = [v for v in sorted(d.c) if g.degree(v) % 2]
    return Check(not bad, bad)


def check_majority_partition(g: Graph, a: frozenset[int], b: frozenset[int]) -> Check:
    """Every vertex has strictly more neighbours on the opposite side."""
    bad = []
    for v in range(g.n):
        own, other = (a, b) if v in a else (b, a)
        if degree_into(g, v, other) <= degree_into(g, v, own):
            bad.append(v)
    return Check(not bad, bad)
