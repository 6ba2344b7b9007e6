"""Constructive energy descent producing an A/B/C decomposition.

The run alternates two phases until nothing moves:

* Phase R rigidly rotates every vertex outside the pivot class and its
  antipode in the non-increasing direction until a collision, repeating
  until the configuration is antipodal.
* Phase A works on an antipodal configuration with A at angle 0, B at 1/2
  and C at 1/4.  It either finds a single-vertex move that strictly lowers
  the energy (after which Phase R runs again) or certifies that the current
  positions form a valid decomposition.

All arithmetic is exact; every step is recorded in a :class:`DescentTrace`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal

from .circle import (
    HALF,
    QUARTER,
    THREE_QUARTERS,
    Configuration,
    PositionSplit,
    energy,
    format_rational,
    is_antipodal,
    move_delta,
    split_at_pivot,
)
from .graph import Graph, GraphError, cross_edges, is_connected

Direction = Literal["ccw", "cw"]

INIT = "init"
ROTATION = "rotation-collision"
CANONICAL = "canonical-rotation"
STRICT = "strict-descent-move"
NEUTRAL = "neutral-move-to-C"
RESTART = "phase-A-restart"

# kinds that cost budget; markers are free
_COUNTED = {ROTATION, CANONICAL, STRICT, NEUTRAL}


class EngineFault(RuntimeError):
    """An internal invariant failed. Carries the trace up to the failure."""

    def __init__(self, message: str, trace: "DescentTrace | None" = None):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class Decomposition:
    a: frozenset[int]
    b: frozenset[int]
    c: frozenset[int]

    def __post_init__(self):
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise ValueError("decomposition sets overlap")

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "Decomposition":
        sets: dict[str, set[int]] = {"A": set(), "B": set(), "C": set()}
        for v, lab in enumerate(labels):
            if lab not in sets:
                raise ValueError(f"vertex {v} has unknown class {lab!r}")
            sets[lab].add(v)
        return cls(frozenset(sets["A"]), frozenset(sets["B"]), frozenset(sets["C"]))

    @property
    def n(self) -> int:
        return len(self.a) + len(self.b) + len(self.c)

    def labels(self) -> list[str]:
        out = [""] * self.n
        for name, s in (("A", self.a), ("B", self.b), ("C", self.c)):
            for v in s:
                out[v] = name
        return out

    def sizes(self) -> tuple[int, int, int]:
        return len(self.a), len(self.b), len(self.c)

    def swapped(self) -> "Decomposition":
        return Decomposition(self.b, self.a, self.c)

    def to_dict(self) -> dict:
        return {"A": sorted(self.a), "B": sorted(self.b), "C": sorted(self.c)}


@dataclass(frozen=True)
class TraceStep:
    """One event of a run.

    ``delta`` is the rotation amount in turns for rotation steps and the
    exact energy change for single-vertex moves.
    """

    kind: str
    energy: Fraction
    config: Configuration
    round: int
    pivot: int | None = None
    vertex: int | None = None
    direction: str | None = None
    delta: Fraction | None = None
    target: Fraction | None = None
    colliders: tuple[int, ...] = ()
    rule: str | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "round": self.round}
        if self.pivot is not None:
            out["pivot"] = self.pivot
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.rule is not None:
            out["rule"] = self.rule
        if self.direction is not None:
            out["direction"] = self.direction
        if self.colliders:
            out["colliders"] = list(self.colliders)
        if self.target is not None:
            out["target"] = format_rational(self.target)
        if self.delta is not None:
            out["delta"] = format_rational(self.delta)
        out["energy"] = format_rational(self.energy)
        out["config"] = self.config.to_json()
        return out


@dataclass
class DescentTrace:
    steps: list[TraceStep] = field(default_factory=list)

    def append(self, step: TraceStep) -> None:
        self.steps.append(step)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def energies(self) -> list[Fraction]:
        return [s.energy for s in self.steps]

    def count(self, kind: str) -> int:
        return sum(1 for s in self.steps if s.kind == kind)

    @property
    def cost(self) -> int:
        return sum(1 for s in self.steps if s.kind in _COUNTED)

    @property
    def initial_energy(self) -> Fraction:
        return self.steps[0].energy

    @property
    def final_energy(self) -> Fraction:
        return self.steps[-1].energy

    @property
    def final_config(self) -> Configuration:
        return self.steps[-1].config

    def summary(self) -> dict:
        return {
            "steps": len(self.steps),
            "collisions": self.count(ROTATION),
            "strict_descents": self.count(STRICT),
            "neutral_moves": self.count(NEUTRAL),
            "phase_a_restarts": self.count(RESTART),
            "initial_energy": format_rational(self.initial_energy),
            "final_energy": format_rational(self.final_energy),
        }

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_json()) + "\n" for s in self.steps)


class _Recorder:
    """Trace plus step budget; energies of every snapshot are recomputed from scratch."""

    def __init__(self, g: Graph, trace: DescentTrace | None, budget: int | None):
        self.g = g
        self.trace = trace if trace is not None else DescentTrace()
        self.budget = budget
        self.round = 0
        self.cost = self.trace.cost

    def record(self, kind: str, config: Configuration, **info) -> Fraction:
        e = energy(self.g, config)
        if self.trace.steps and e > self.trace.steps[-1].energy:
            self.fault(f"energy increased at {kind}: {self.trace.steps[-1].energy} -> {e}")
        self.trace.append(TraceStep(kind, e, config, self.round, **info))
        self.cost += kind in _COUNTED
        if self.budget is not None and self.cost > self.budget:
            self.fault(f"step budget {self.budget} exceeded")
        return e

    def fault(self, message: str):
        raise EngineFault(message, self.trace)


# -- Phase R ---------------------------------------------------------------


def rotation_imbalance(g: Graph, split: PositionSplit) -> int:
    """Positive: counterclockwise rotation of the moving points lowers the energy."""
    p, q = split.pivot_class, split.antipode_class
    return (cross_edges(g, p, split.right) + cross_edges(g, q, split.left)) - (
        cross_edges(g, p, split.left) + cross_edges(g, q, split.right)
    )


def collision_delta(
    c: Configuration, split: PositionSplit, direction: Direction
) -> tuple[Fraction, frozenset[int]]:
    """Smallest rigid rotation of the moving points that lands one on the pivot axis."""
    if not split.moving:
        raise ValueError("nothing to rotate: configuration is antipodal")
    base = c.angles[min(split.pivot_class)]
    gaps: dict[int, Fraction] = {}
    for v in split.moving:
        r = (c.angles[v] - base) % 1
        if direction == "ccw":
            gaps[v] = (HALF - r) if r < HALF else (1 - r)
        else:
            gaps[v] = r if r < HALF else (r - HALF)
    delta = min(gaps.values())
    return delta, frozenset(v for v, gap in gaps.items() if gap == delta)


@dataclass(frozen=True)
class RotationStep:
    pivot: int
    split: PositionSplit
    imbalance: int
    direction: Direction
    delta: Fraction
    colliders: frozenset[int]

    def apply(self, c: Configuration) -> Configuration:
        shift = self.delta if self.direction == "ccw" else -self.delta
        return c.rotated(shift, self.split.moving)


def plan_rotation(g: Graph, c: Configuration, pivot: int = 0) -> RotationStep:
    split = split_at_pivot(c, pivot)
    s = rotation_imbalance(g, split)
    direction: Direction = "cw" if s < 0 else "ccw"
    delta, colliders = collision_delta(c, split, direction)
    return RotationStep(pivot, split, s, direction, delta, colliders)


def _rotate(g: Graph, c: Configuration, rec: _Recorder) -> Configuration:
    collisions = 0
    e = energy(g, c)
    while is_antipodal(c) is None:
        step = plan_rotation(g, c, pivot=0)
        new = step.apply(c)
        # energy is linear along the rotation: slope 8 per turn per unit of imbalance
        expected = e - 8 * abs(step.imbalance) * step.delta
        e = rec.record(
            ROTATION,
            new,
            pivot=step.pivot,
            direction=step.direction,
            delta=step.delta,
            colliders=tuple(sorted(step.colliders)),
        )
        if e != expected:
            rec.fault(f"rotation energy {e} differs from linear prediction {expected}")
        landed = step.split.pivot_class | step.split.antipode_class | step.colliders
        if split_at_pivot(new, 0).pivot_class | split_at_pivot(new, 0).antipode_class != landed:
            rec.fault("rotation broke a coincidence or antipodality")
        collisions += 1
        if collisions > g.n - 1:
            rec.fault(f"Phase R exceeded {g.n - 1} collisions")
        c = new
    return c


def rotate_to_antipodal(
    g: Graph, c: Configuration, trace: DescentTrace | None = None
) -> Configuration:
    """Phase R: rotate until every vertex sits at vertex 0's angle or its antipode."""
    rec = _Recorder(g, trace, None)
    if not rec.trace.steps:
        rec.record(INIT, c)
    return _rotate(g, c, rec)


# -- Phase A ---------------------------------------------------------------


@dataclass(frozen=True)
class Descended:
    config: Configuration
    energy: Fraction


@dataclass(frozen=True)
class Done:
    decomposition: Decomposition
    config: Configuration


RefineOutcome = Descended | Done


def _labels(c: Configuration) -> list[str]:
    lab = []
    for a in c.angles:
        if a == 0:
            lab.append("A")
        elif a == HALF:
            lab.append("B")
        elif a == QUARTER:
            lab.append("C")
        else:
            raise ValueError(f"angle {a} is not a Phase A position")
    return lab


def _tally(g: Graph, labels: list[str], v: int) -> dict[str, int]:
    t = {"A": 0, "B": 0, "C": 0}
    for w in g.adj[v]:
        t[labels[w]] += 1
    return t


def _toward_c(t: dict[str, int], own: str) -> int:
    """Half the energy change per edge pair of moving an A/B vertex to 1/4."""
    other = "B" if own == "A" else "A"
    return t["C"] + t[other] - t[own]


def _far_side(t: dict[str, int], own: str) -> int:
    """Same, for moving to 3/4 (away from C along the other arc)."""
    other = "B" if own == "A" else "A"
    return -t["C"] + t[other] - t[own]


def _move(
    g: Graph, c: Configuration, rec: _Recorder, kind: str, v: int, target: Fraction,
    tally_delta: int, rule: str,
) -> Configuration:
    exact = move_delta(g, c, v, target)
    if exact != tally_delta:
        rec.fault(f"{rule}: tally delta {tally_delta} != exact delta {exact} for vertex {v}")
    before = rec.trace.steps[-1].energy
    new = c.with_angle(v, target)
    e = rec.record(kind, new, vertex=v, target=target, delta=exact, rule=rule)
    if e != before + exact:
        rec.fault(f"{rule}: energy {e} != {before} + {exact}")
    if kind == STRICT and exact > -2:
        rec.fault(f"{rule}: strict descent of only {exact}")
    return new


def _canonicalize(g: Graph, c: Configuration, rec: _Recorder) -> Configuration:
    base = is_antipodal(c)
    if base is None:
        raise ValueError("Phase A needs an antipodal configuration")
    if base != 0:
        c = c.rotated(-base)
        rec.record(CANONICAL, c, delta=(-base) % 1, direction="ccw")
    return c


def _refine(g: Graph, c: Configuration, rec: _Recorder) -> RefineOutcome:
    c = _canonicalize(g, c, rec)
    while True:
        labels = _labels(c)
        ab = [v for v in range(g.n) if labels[v] != "C"]

        # A1: strict descent toward C; highest id first, like the A4 endpoint rule
        for v in reversed(ab):
            d = _toward_c(_tally(g, labels, v), labels[v])
            if d < 0:
                c = _move(g, c, rec, STRICT, v, QUARTER, 2 * d, "A1")
                return Descended(c, rec.trace.steps[-1].energy)

        # A2: energy-neutral moves to C, re-tallying after each; the vertex with
        # most neighbours goes first, ties to the highest id
        while True:
            labels = _labels(c)
            pick = None
            for v in range(g.n):
                if labels[v] == "C":
                    continue
                d = _toward_c(_tally(g, labels, v), labels[v])
                if d < 0:
                    rec.fault(f"A2: strict descent appeared at vertex {v}")
                if d == 0 and (pick is None or g.degree(v) >= g.degree(pick)):
                    pick = v
            if pick is None:
                break
            c = _move(g, c, rec, NEUTRAL, pick, QUARTER, 0, "A2")

        labels = _labels(c)
        # A3: escape along the far arc
        for v in reversed(range(g.n)):
            if labels[v] == "C":
                continue
            d = _far_side(_tally(g, labels, v), labels[v])
            if d < 0:
                c = _move(g, c, rec, STRICT, v, THREE_QUARTERS, 2 * d, "A3")
                return Descended(c, rec.trace.steps[-1].energy)

        # A4: reflect an endpoint of an edge inside C
        for u, v in g.edges:
            if labels[u] == "C" and labels[v] == "C":
                dc = _tally(g, labels, v)["C"]
                c = _move(g, c, rec, STRICT, v, THREE_QUARTERS, -4 * dc, "A4")
                return Descended(c, rec.trace.steps[-1].energy)

        # A5: unbalanced C vertex joins the side holding fewer of its neighbours
        moved = False
        for v in reversed(range(g.n)):
            if labels[v] != "C":
                continue
            t = _tally(g, labels, v)
            if t["A"] != t["B"]:
                target = Fraction(0) if t["A"] < t["B"] else HALF
                c = _move(g, c, rec, STRICT, v, target, -2 * abs(t["A"] - t["B"]), "A5")
                rec.record(RESTART, c)
                moved = True
                break
        if moved:
            continue

        return Done(Decomposition.from_labels(labels), c)


def refine_antipodal(
    g: Graph, c: Configuration, trace: DescentTrace | None = None
) -> RefineOutcome:
    """Phase A on an antipodal configuration (rotated so vertex 0 sits at angle 0)."""
    if is_antipodal(c) is None:
        raise ValueError("refine_antipodal needs an antipodal configuration")
    rec = _Recorder(g, trace, None)
    if not rec.trace.steps:
        rec.record(INIT, c)
    return _refine(g, c, rec)


# -- driver ----------------------------------------------------------------


def config_from_cut(n: int, side_a: Iterable[int]) -> Configuration:
    """Vertices in ``side_a`` at angle 0, all others at 1/2."""
    side_a = set(side_a)
    return Configuration(0 if v in side_a else HALF for v in range(n))


def random_quarter_config(n: int, seed: int = 0) -> Configuration:
    rng = random.Random(seed)
    return Configuration(Fraction(rng.randrange(4), 4) for _ in range(n))


def default_budget(g: Graph) -> int:
    return 16 * g.m * g.n


def initial_config(g: Graph, init: Configuration | str = "zero", seed: int = 0) -> Configuration:
    if isinstance(init, Configuration):
        if len(init) != g.n:
            raise ValueError(f"initial configuration has {len(init)} angles for {g.n} vertices")
        return init
    if init == "zero":
        return Configuration.zeros(g.n)
    if init == "random":
        return random_quarter_config(g.n, seed)
    raise ValueError(f"unknown init strategy {init!r}")


def decompose(
    g: Graph,
    init: Configuration | str = "zero",
    *,
    seed: int = 0,
    budget: int | None = None,
) -> tuple[Decomposition, DescentTrace]:
    """Run Phase R / Phase A to completion.

    ``init`` is ``"zero"`` (all vertices at angle 0), ``"random"`` (angles
    drawn from the quarter grid with ``seed``) or an explicit
    :class:`Configuration`, e.g. from :func:`config_from_cut`.
    """
    if g.n == 0:
        raise GraphError("cannot decompose the empty graph")
    if not is_connected(g):
        raise GraphError("graph not connected")
    c = initial_config(g, init, seed)
    rec = _Recorder(g, None, default_budget(g) if budget is None else budget)
    rec.record(INIT, c)
    if g.n == 1:
        return Decomposition(frozenset(), frozenset(), frozenset({0})), rec.trace
    while True:
        rec.round += 1
        c = _rotate(g, c, rec)
        outcome = _refine(g, c, rec)
        if isinstance(outcome, Done):
            return outcome.decomposition, rec.trace
        c = outcome.config


def folklore_partition(g: Graph) -> tuple[frozenset[int], frozenset[int], int]:
    """Local search for a partition where every vertex has a majority across.

    Requires every degree to be odd. Starts with all vertices on one side and
    repeatedly moves the lowest-id bad vertex. Returns ``(a, b, moves)`` with
    vertex 0 in ``a``.
    """
    for v in range(g.n):
        if g.degree(v) % 2 == 0:
            raise ValueError(f"vertex {v} has even degree {g.degree(v)}")
    side = [0] * g.n
    moves = 0
    while True:
        bad = None
        for v in range(g.n):
            same = sum(1 for w in g.adj[v] if side[w] == side[v])
            if 2 * same > g.degree(v):
                bad = v
                break
        if bad is None:
            break
        side[bad] ^= 1
        moves += 1
        if moves > g.m:
            raise EngineFault(f"folklore local search exceeded {g.m} moves")
    if g.n and side[0] == 1:
        side = [1 - s for s in side]
    a = frozenset(v for v in range(g.n) if side[v] == 0)
    return a, frozenset(range(g.n)) - a, moves
