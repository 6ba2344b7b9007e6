"""Simple undirected graphs: construction, parsing, generators and edge counting.

Vertices are dense 0-based integers. Vertex sets are plain ``frozenset[int]``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import AbstractSet, Iterable, Sequence

VertexSet = frozenset

GNP_MAX_RETRIES = 1000
REGULAR_MAX_RETRIES = 1000


class GraphError(ValueError):
    """Invalid graph structure (self-loop, out-of-range vertex, bad generator args)."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "max_degree", "_adjsets")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(x)) for x in nbrs)
        self.max_degree = max((len(x) for x in self.adj), default=0)
        self._adjsets = tuple(frozenset(x) for x in self.adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def to_dimacs(self) -> str:
        lines = [f"p edge {self.n} {self.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


# -- parsing ---------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` lines; ``#`` starts a comment."""
    edges = []
    n = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two vertex ids, got {raw.strip()!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex id in {raw.strip()!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError("negative vertex id", lineno)
        if u == v:
            raise GraphError(f"self-loop at vertex {u} (line {lineno})")
        edges.append((u, v))
        n = max(n, u + 1, v + 1)
    return Graph(n, edges)


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``p edge n m`` / ``e u v`` (1-based) text."""
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4:
                raise ParseError("problem line must be 'p edge n m'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer in problem line", lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise ParseError("edge line must be 'e u v'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("non-integer vertex id", lineno) from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(f"vertex id {x} out of range [1, {n}]", lineno)
            if u == v:
                raise GraphError(f"self-loop at vertex {u} (line {lineno})")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise ParseError("missing problem line 'p edge n m'")
    if len(edges) != m:
        raise ParseError(f"problem line declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def parse_graph(text: str) -> Graph:
    """Dispatch on content: DIMACS if a ``p`` line is present, else edge list."""
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("p ") or s == "p":
            return parse_dimacs(text)
    return parse_edge_list(text)


# -- generators ------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    args: tuple = ()

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """``"complete:5"``, ``"random_gnp:10:0.3:7"``, ``"petersen"``."""
        name, *raw = text.strip().split(":")
        args = []
        for a in raw:
            try:
                args.append(int(a))
            except ValueError:
                try:
                    args.append(float(a))
                except ValueError:
                    raise GraphError(f"bad generator argument {a!r} in {text!r}") from None
        return cls(name.replace("-", "_").lower(), tuple(args))

    def __str__(self) -> str:
        return ":".join([self.name, *map(str, self.args)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def friendship(k: int) -> Graph:
    """k triangles sharing vertex 0; triangle i is {0, 2i+1, 2i+2}."""
    if k < 1:
        raise GraphError("friendship graph needs k >= 1")
    edges = []
    for i in range(k):
        a, b = 2 * i + 1, 2 * i + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph(2 * k + 1, edges)


def complete_bipartite(p: int, q: int) -> Graph:
    if p < 1 or q < 1:
        raise GraphError("complete bipartite graph needs both sides nonempty")
    return Graph(p + q, ((u, p + v) for u in range(p) for v in range(q)))


def _petersen_edges() -> list[tuple[int, int]]:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner


def petersen() -> Graph:
    return Graph(10, _petersen_edges())


def lcf(n: int, shifts: Sequence[int], repeats: int = 1) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    seq = list(shifts) * repeats
    for i in range(n):
        edges.append((i, (i + seq[i % len(seq)]) % n))
    return Graph(n, edges)


def frucht() -> Graph:
    return lcf(12, [-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2])


def thomassen32() -> Graph:
    """32-vertex graph glued from four Petersen-minus-a-vertex blocks.

    Each block loses vertex 0 of the Petersen graph, leaving stubs 1, 4, 5.
    Stub 4 of block i is identified with stub 1 of block i+1 (ring of four),
    and the free stubs 5 of opposite blocks are joined by an edge.
    """
    def key(b: int, x: int) -> tuple[int, int]:
        return ((b + 1) % 4, 1) if x == 4 else (b, x)

    keys = sorted({key(b, x) for b in range(4) for x in range(1, 10)})
    index = {k: i for i, k in enumerate(keys)}
    edges = []
    for b in range(4):
        for u, v in _petersen_edges():
            if 0 not in (u, v):
                edges.append((index[key(b, u)], index[key(b, v)]))
    edges.append((index[(0, 5)], index[(2, 5)]))
    edges.append((index[(1, 5)], index[(3, 5)]))
    return Graph(len(keys), edges)


def random_gnp(n: int, p: float, seed: int = 0, max_retries: int = GNP_MAX_RETRIES) -> Graph:
    """Erdos-Renyi G(n, p), resampled until connected."""
    if n < 1:
        raise GraphError("random_gnp needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    for _ in range(max_retries):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = Graph(n, edges)
        if is_connected(g):
            return g
    raise GraphError(f"random_gnp({n}, {p}) not connected after {max_retries} draws")


def random_regular(n: int, d: int, seed: int = 0, max_retries: int = REGULAR_MAX_RETRIES) -> Graph:
    """Uniform-ish d-regular graph by the pairing model, resampled until simple and connected."""
    if n < 1 or d < 0 or d >= n:
        raise GraphError(f"no {d}-regular graph on {n} vertices")
    if (n * d) % 2:
        raise GraphError(f"n*d must be even (n={n}, d={d})")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(max_retries):
        rng.shuffle(points)
        pairs = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = (u, v) if u < v else (v, u)
            if u == v or e in pairs:
                ok = False
                break
            pairs.add(e)
        if not ok:
            continue
        g = Graph(n, pairs)
        if is_connected(g):
            return g
    raise GraphError(f"random_regular({n}, {d}) failed after {max_retries} draws")


_NAMED = {
    "complete": (complete, 1),
    "cycle": (cycle, 1),
    "path": (path, 1),
    "friendship": (friendship, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "petersen": (petersen, 0),
    "frucht": (frucht, 0),
    "thomassen32": (thomassen32, 0),
}


def generate(spec: GeneratorSpec | str, seed: int = 0) -> Graph:
    """Build a graph from a generator spec.

    Random specs take their seed from the spec's last argument when present,
    otherwise from ``seed``.
    """
    if isinstance(spec, str):
        spec = GeneratorSpec.parse(spec)
    name, args = spec.name, spec.args
    if name in _NAMED:
        fn, arity = _NAMED[name]
        if len(args) != arity:
            raise GraphError(f"{name} takes {arity} argument(s), got {len(args)}")
        if any(not isinstance(a, int) for a in args):
            raise GraphError(f"{name} takes integer arguments")
        return fn(*args)
    if name == "random_gnp":
        if len(args) not in (2, 3):
            raise GraphError("random_gnp takes n:p[:seed]")
        n, p = args[0], args[1]
        s = args[2] if len(args) == 3 else seed
        if not isinstance(n, int) or not isinstance(s, int):
            raise GraphError("random_gnp needs integer n and seed")
        return random_gnp(n, float(p), int(s))
    if name == "random_regular":
        if len(args) not in (2, 3) or any(not isinstance(a, int) for a in args):
            raise GraphError("random_regular takes integer n:d[:seed]")
        s = args[2] if len(args) == 3 else seed
        return random_regular(args[0], args[1], s)
    raise GraphError(f"unknown generator {name!r}")


# -- queries ---------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n


def cross_edges(g: Graph, x: AbstractSet[int], y: AbstractSet[int]) -> int:
    """Number of edges with one endpoint in ``x`` and the other in ``y``.

    Each edge counts at most once, so ``cross_edges(g, s, s)`` is the number
    of edges inside ``s``.
    """
    count = 0
    for u, v in g.edges:
        if (u in x and v in y) or (v in x and u in y):
            count += 1
    return count


def degree_into(g: Graph, v: int, s: AbstractSet[int]) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    return sum(1 for w in g.adj[v] if w in s)


def vertex_set(members: Iterable[int] = ()) -> frozenset[int]:
    return frozenset(members)
