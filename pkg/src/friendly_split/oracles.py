"""Brute-force ground truth for small graphs."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Sequence

import numba
import numpy as np

from .circle import Configuration
from .engine import Decomposition
from .graph import Graph
from .verifier import check_properties

MAXCUT_CAP = 28
ENUMERATE_CAP = 14


class CapExceeded(ValueError):
    pass


@dataclass
class OracleResult:
    """``instances_examined`` is the size of the search space covered, pruned branches included."""

    value: Any
    instances_examined: int
    elapsed: float
    partition: tuple[frozenset[int], frozenset[int]] | None = None
    total: int | None = None


def worker_count() -> int:
    env = os.environ.get("FRIENDLY_SPLIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _csr(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    offsets = np.zeros(g.n + 1, dtype=np.int64)
    for v in range(g.n):
        offsets[v + 1] = offsets[v] + g.degree(v)
    targets = np.array([w for v in range(g.n) for w in g.adj[v]], dtype=np.int64)
    return offsets, targets


@numba.njit(cache=True)
def _lex_less(m1, m2):
    # sorted-member-list order on bitmasks
    diff = m1 ^ m2
    if diff == 0:
        return False
    x = 0
    while not (diff >> x) & 1:
        x += 1
    if (m1 >> x) & 1:
        return (m2 >> (x + 1)) != 0
    return (m1 >> (x + 1)) == 0


@numba.njit(cache=True)
def _gray_maxcut(n, offsets, targets):
    # vertex 0 stays on side 0; side 0 is "A"
    side = np.zeros(n, dtype=np.int64)
    cut = 0
    amask = (1 << n) - 1
    best = 0
    best_mask = amask
    total = 1 << (n - 1)
    for i in range(1, total):
        v = 1
        j = i
        while not j & 1:
            j >>= 1
            v += 1
        same = 0
        for k in range(offsets[v], offsets[v + 1]):
            if side[targets[k]] == side[v]:
                same += 1
        deg = offsets[v + 1] - offsets[v]
        cut += same - (deg - same)
        side[v] ^= 1
        amask ^= 1 << v
        if cut > best or (cut == best and _lex_less(amask, best_mask)):
            best = cut
            best_mask = amask
    return best, best_mask


def maxcut_bruteforce(g: Graph, cap: int = MAXCUT_CAP) -> OracleResult:
    """Exact MaxCut over all 2^(n-1) bipartitions, Gray-code order.

    Ties go to the lexicographically smallest side A containing vertex 0.
    """
    if g.n > cap:
        raise CapExceeded(f"maxcut brute force capped at n={cap}, got n={g.n}")
    if g.n > 62:
        raise CapExceeded("bitmask representation limited to 62 vertices")
    start = time.perf_counter()
    if g.n == 0:
        return OracleResult(0, 1, 0.0, (frozenset(), frozenset()))
    offsets, targets = _csr(g)
    best, mask = _gray_maxcut(g.n, offsets, targets)
    a = frozenset(v for v in range(g.n) if (int(mask) >> v) & 1)
    b = frozenset(range(g.n)) - a
    return OracleResult(int(best), 1 << (g.n - 1), time.perf_counter() - start, (a, b))


def enumerate_decompositions(
    g: Graph, cap: int = ENUMERATE_CAP, limit: int | None = None
) -> OracleResult:
    """All A/B/C labelings passing every decomposition property.

    Depth-first over vertices in id order. An intra-C edge is rejected as
    soon as both ends are labelled; a vertex's degree conditions are checked
    once its whole neighbourhood is labelled. Survivors are re-checked with
    :func:`check_properties`. ``limit`` caps the returned list; ``total``
    always holds the full count.
    """
    if g.n > cap:
        raise CapExceeded(f"decomposition enumeration capped at n={cap}, got n={g.n}")
    start = time.perf_counter()
    n = g.n
    adj = g.adj
    ready: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        ready[max((v, *adj[v]))].append(v)
    lab = [0] * n  # 0=A, 1=B, 2=C
    found: list[Decomposition] = []
    total = 0

    def local_ok(v: int) -> bool:
        t = [0, 0, 0]
        for w in adj[v]:
            t[lab[w]] += 1
        own = lab[v]
        if own == 2:
            return t[2] == 0 and t[0] == t[1]
        other = 1 - own
        return t[other] >= t[own] + max(1, t[2])

    def dfs(k: int) -> None:
        nonlocal total
        if k == n:
            d = Decomposition.from_labels("ABC"[x] for x in lab)
            if check_properties(g, d).passed:
                total += 1
                if limit is None or len(found) < limit:
                    found.append(d)
            return
        for x in (0, 1, 2):
            if x == 2 and any(w < k and lab[w] == 2 for w in adj[k]):
                continue
            lab[k] = x
            if all(local_ok(v) for v in ready[k]):
                dfs(k + 1)

    if n:
        dfs(0)
    return OracleResult(found, 3**n, time.perf_counter() - start, total=total)


def _cut_samples(turns: np.ndarray, edges: np.ndarray, u: np.ndarray) -> np.ndarray:
    # side 1 = angles in the half-open arc [u, u + 1/2)
    sides = ((turns[None, :] - u[:, None]) % 1.0) < 0.5
    if len(edges) == 0:
        return np.zeros(len(u))
    return (sides[:, edges[:, 0]] != sides[:, edges[:, 1]]).sum(axis=1).astype(float)


def random_line_cuts(
    g: Graph, turns: Sequence[float], samples: int, rng: np.random.Generator, chunk: int = 8192
) -> np.ndarray:
    """Cut sizes for ``samples`` uniformly random diameters; angles in turns."""
    turns = np.asarray(turns, dtype=float)
    edges = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    out = np.empty(samples)
    for lo in range(0, samples, chunk):
        hi = min(samples, lo + chunk)
        out[lo:hi] = _cut_samples(turns, edges, rng.random(hi - lo))
    return out


def monte_carlo_round(
    g: Graph, c: Configuration, samples: int, seed: int = 0, shards: int = 1
) -> tuple[float, float]:
    """Mean and sample variance of the random-diameter cut.

    Each shard draws from its own child stream of ``SeedSequence(seed)``, so
    the result depends on ``(seed, samples, shards)`` only.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    shards = max(1, min(shards, samples))
    turns = [float(a) for a in c.angles]
    children = np.random.SeedSequence(seed).spawn(shards)
    sizes = [samples // shards + (i < samples % shards) for i in range(shards)]

    def run(i: int) -> np.ndarray:
        return random_line_cuts(g, turns, sizes[i], np.random.default_rng(children[i]))

    if shards == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=worker_count()) as pool:
            parts = list(pool.map(run, range(shards)))
    cuts = np.concatenate(parts)
    var = float(cuts.var(ddof=1)) if samples > 1 else 0.0
    return float(cuts.mean()), var
