"""Shared corpora and brute-force reference implementations for the tests.

The references here deliberately avoid the package's own counting helpers.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from friendly_split.circle import Configuration
from friendly_split.graph import Graph, is_connected, random_gnp


def all_connected_graphs(n: int) -> list[Graph]:
    """Every connected labelled graph on n vertices, by filtering edge subsets."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = Graph(n, edges)
        if is_connected(g):
            out.append(g)
    return out


def small_corpus() -> list[Graph]:
    return [g for n in range(1, 6) for g in all_connected_graphs(n)]


def random_corpus(count: int = 500, base_seed: int = 0) -> list[Graph]:
    """Seeded connected G(n, p) with 6 <= n <= 12."""
    out = []
    for i in range(count):
        rng = random.Random(base_seed + i)
        n = rng.randint(6, 12)
        p = rng.uniform(0.2, 0.7)
        out.append(random_gnp(n, p, seed=base_seed + i))
    return out


def brute_maxcut(g: Graph) -> int:
    best = 0
    for bits in itertools.product((0, 1), repeat=g.n):
        best = max(best, sum(1 for u, v in g.edges if bits[u] != bits[v]))
    return best


def brute_energy(g: Graph, angles) -> Fraction:
    """Direct double sum over ordered pairs of the tent function."""
    total = Fraction(0)
    for i in range(g.n):
        for j in range(g.n):
            if g.has_edge(i, j):
                diff = (Fraction(angles[i]) - Fraction(angles[j])) % 1
                dist = min(diff, 1 - diff)
                total += 1 - 4 * dist
    return total


def random_rational_config(n: int, rng: random.Random, max_den: int = 48) -> Configuration:
    return Configuration(Fraction(rng.randrange(max_den), max_den) for _ in range(n))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, chosen) if keep]
    if connected:
        # a random spanning path keeps it connected without biasing the rest much
        order = draw(st.permutations(range(n)))
        edges += list(zip(order, order[1:]))
    return Graph(n, edges)


fractions_in_turn = st.fractions(min_value=0, max_value=1, max_denominator=64).filter(lambda x: x < 1)


@st.composite
def graph_and_config(draw, max_n: int = 8, connected: bool = False):
    g = draw(graphs(min_n=1, max_n=max_n, connected=connected))
    angles = draw(st.lists(fractions_in_turn, min_size=g.n, max_size=g.n))
    return g, Configuration(angles)
