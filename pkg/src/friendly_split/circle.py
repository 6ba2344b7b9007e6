"""Exact configurations on the circle and the piecewise-linear energy.

Angles are ``Fraction`` values in turns, normalised into ``[0, 1)``.  With
angles in turns the tent function becomes ``1 - 4d`` for geodesic distance
``d`` and an edge is cut by a random diameter with probability ``2d``, so
every quantity here is an exact rational.

Energies use the ordered-pair double sum: each edge contributes twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .graph import Graph

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
THREE_QUARTERS = Fraction(3, 4)


def angle(x) -> Fraction:
    """Normalise a rational (or ``"num/den"`` string) into ``[0, 1)`` turns."""
    if isinstance(x, float):
        raise TypeError("angles must be exact; pass a Fraction, int or 'num/den' string")
    return Fraction(x) % 1


def antipode(a: Fraction) -> Fraction:
    return (a + HALF) % 1


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def circle_distance(a: Fraction, b: Fraction) -> Fraction:
    d = abs(a - b) % 1
    return min(d, 1 - d)


def g_eval(d: Fraction) -> Fraction:
    """Tent function at geodesic distance ``d`` (turns): 1 at 0, -1 at 1/2."""
    if not 0 <= d <= HALF:
        raise ValueError(f"distance {d} outside [0, 1/2]")
    return 1 - 4 * Fraction(d)


class Configuration:
    """One angle per vertex, immutable."""

    def __init__(self, angles: Iterable):
        self.angles: tuple[Fraction, ...] = tuple(angle(a) for a in angles)

    @classmethod
    def zeros(cls, n: int) -> "Configuration":
        return cls([0] * n)

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "Configuration":
        return cls(parse_rational(s) for s in items)

    def to_json(self) -> list[str]:
        return [format_rational(a) for a in self.angles]

    def __len__(self) -> int:
        return len(self.angles)

    def __getitem__(self, v: int) -> Fraction:
        return self.angles[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.angles == other.angles

    def __hash__(self) -> int:
        return hash(self.angles)

    def __repr__(self) -> str:
        return f"Configuration([{', '.join(map(str, self.angles))}])"

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        """Maximal groups of coincident vertices, ordered by lowest member."""
        groups: dict[Fraction, list[int]] = {}
        for v, a in enumerate(self.angles):
            groups.setdefault(a, []).append(v)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    def with_angle(self, v: int, target) -> "Configuration":
        angles = list(self.angles)
        angles[v] = angle(target)
        return Configuration(angles)

    def with_angles(self, updates: Mapping[int, Fraction]) -> "Configuration":
        angles = list(self.angles)
        for v, a in updates.items():
            angles[v] = angle(a)
        return Configuration(angles)

    def rotated(self, shift, vertices: Iterable[int] | None = None) -> "Configuration":
        """Shift the given vertices (all by default) counterclockwise by ``shift`` turns."""
        shift = Fraction(shift)
        if vertices is None:
            return Configuration(a + shift for a in self.angles)
        return self.with_angles({v: self.angles[v] + shift for v in vertices})


@dataclass(frozen=True)
class PositionSplit:
    """Vertices at the pivot angle, at its antipode, and in the two open half-turns.

    ``right`` is the open half-turn counterclockwise from the pivot angle.
    """

    pivot_class: frozenset[int]
    antipode_class: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]

    @property
    def moving(self) -> frozenset[int]:
        return self.left | self.right


def _check_size(g: Graph, c: Configuration) -> None:
    if len(c) != g.n:
        raise ValueError(f"configuration has {len(c)} angles, graph has {g.n} vertices")


def energy(g: Graph, c: Configuration) -> Fraction:
    _check_size(g, c)
    th = c.angles
    total = Fraction(0)
    for u, v in g.edges:
        total += g_eval(circle_distance(th[u], th[v]))
    return 2 * total


def expected_cut(g: Graph, c: Configuration) -> Fraction:
    """Expected number of edges cut by a uniformly random diameter."""
    _check_size(g, c)
    th = c.angles
    return 2 * sum((circle_distance(th[u], th[v]) for u, v in g.edges), Fraction(0))


def is_antipodal(c: Configuration) -> Fraction | None:
    """Base angle (that of vertex 0) if every angle is it or its antipode, else None."""
    if len(c) == 0:
        return None
    base = c.angles[0]
    opp = antipode(base)
    if all(a == base or a == opp for a in c.angles):
        return base
    return None


def split_at_pivot(c: Configuration, pivot: int) -> PositionSplit:
    if not 0 <= pivot < len(c):
        raise ValueError(f"pivot {pivot} out of range")
    base = c.angles[pivot]
    same, opp, left, right = [], [], [], []
    for v, a in enumerate(c.angles):
        r = (a - base) % 1
        if r == 0:
            same.append(v)
        elif r == HALF:
            opp.append(v)
        elif r < HALF:
            right.append(v)
        else:
            left.append(v)
    return PositionSplit(frozenset(same), frozenset(opp), frozenset(left), frozenset(right))


def move_delta(g: Graph, c: Configuration, v: int, target) -> Fraction:
    """Exact energy change from relocating vertex ``v`` to ``target``."""
    _check_size(g, c)
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    target = angle(target)
    old = c.angles[v]
    delta = Fraction(0)
    for w in g.adj[v]:
        a = c.angles[w]
        delta += g_eval(circle_distance(target, a)) - g_eval(circle_distance(old, a))
    return 2 * delta
