"""Floating-point MaxCut heuristics on the circle.

Cosine-energy gradient descent (the rank-2 Burer-Monteiro-Zhang relaxation),
random-diameter rounding, the rounding guarantee ratio of a general tent-like
function ``g``, and a side-by-side comparison with the exact engine.
Angles here are radians.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .engine import decompose
from .graph import Graph, cross_edges
from .oracles import CapExceeded, maxcut_bruteforce, random_line_cuts
from .verifier import judicious_factor

TWO_PI = 2.0 * math.pi
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class DescentFault(RuntimeError):
    pass


def float_config(angles: Sequence[float]) -> np.ndarray:
    theta = np.asarray(angles, dtype=float)
    if not np.all(np.isfinite(theta)):
        raise ValueError("non-finite angle in configuration")
    return np.mod(theta, TWO_PI)


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    e = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    return e[:, 0], e[:, 1]


def cosine_energy(g: Graph, theta: Sequence[float]) -> float:
    """Sum over ordered adjacent pairs of cos(theta_i - theta_j)."""
    theta = float_config(theta)
    u, v = _edge_arrays(g)
    return float(2.0 * np.cos(theta[u] - theta[v]).sum())


def cosine_gradient(g: Graph, theta: Sequence[float]) -> np.ndarray:
    theta = float_config(theta)
    u, v = _edge_arrays(g)
    s = np.sin(theta[u] - theta[v])
    grad = np.zeros(g.n)
    np.add.at(grad, u, -2.0 * s)
    np.add.at(grad, v, 2.0 * s)
    return grad


@dataclass
class DescentParams:
    step: float | None = None  # default 0.1 / max degree
    max_iter: int = 5000
    tol: float = 1e-8
    max_halvings: int = 60


def descend_cosine(
    g: Graph, init: Sequence[float] | int = 0, params: DescentParams | None = None
) -> tuple[np.ndarray, list[float]]:
    """Gradient descent with step halving whenever a step would raise the energy.

    ``init`` is either an explicit angle vector or an integer seed for
    uniform random angles. Stops when the gradient max-norm drops below
    ``params.tol``.
    """
    params = params or DescentParams()
    if isinstance(init, (int, np.integer)):
        theta = np.random.default_rng(int(init)).uniform(0.0, TWO_PI, g.n)
    else:
        theta = float_config(init)
    step = params.step if params.step is not None else 0.1 / max(1, g.max_degree)
    ceiling = 2 * g.m + 1
    f = cosine_energy(g, theta)
    history = [f]
    for _ in range(params.max_iter):
        grad = cosine_gradient(g, theta)
        if np.max(np.abs(grad), initial=0.0) < params.tol:
            break
        for _ in range(params.max_halvings):
            cand = np.mod(theta - step * grad, TWO_PI)
            fc = cosine_energy(g, cand)
            if not math.isfinite(fc) or fc > ceiling:
                raise DescentFault(f"energy diverged to {fc}")
            if fc <= f:
                break
            step *= 0.5
        else:
            break
        theta, f = cand, fc
        history.append(f)
    return theta, history


def round_best_of(g: Graph, theta: Sequence[float], k: int, seed: int = 0) -> int:
    """Largest cut among ``k`` random diameters."""
    turns = float_config(theta) / TWO_PI
    cuts = random_line_cuts(g, turns, k, np.random.default_rng(seed))
    return int(cuts.max())


@dataclass(frozen=True)
class AdmissibleG:
    """A function g on [0, pi] with g(0) = 1, g(pi) = -1, extended evenly."""

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    differentiable: bool = True

    def __call__(self, x):
        x = np.abs(np.asarray(x, dtype=float))
        return self.func(x)

    def validate(self, tol: float = 1e-12) -> None:
        if abs(float(self(0.0)) - 1.0) > tol or abs(float(self(math.pi)) + 1.0) > tol:
            raise ValueError(f"{self.name}: need g(0)=1 and g(pi)=-1")


TENT_G = AdmissibleG("tent", lambda x: 1.0 - 2.0 * x / math.pi, differentiable=False)
COSINE_G = AdmissibleG("cos", np.cos)
QUADRATIC_G = AdmissibleG("quadratic", lambda x: 1.0 - 2.0 * (x / math.pi) ** 2)


def _ratio(gfun: AdmissibleG, x):
    x = np.asarray(x, dtype=float)
    denom = 1.0 - gfun(x)
    if np.any(denom <= 0.0):
        raise ValueError(f"{gfun.name}: g(x) reaches 1 away from 0; ratio undefined")
    return (2.0 / math.pi) * x / denom


def _golden_min(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float]:
    a, b = lo, hi
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def guarantee_ratio(gfun: AdmissibleG, resolution: int = 10_000) -> float:
    """min over (0, pi] of (2/pi) * x / (1 - g(x)).

    Grid scan at ``resolution`` points, then golden-section refinement on
    the two grid cells around the grid minimum. x = 0 itself is excluded.
    """
    if resolution < 1000:
        raise ValueError("resolution must be at least 1000")
    gfun.validate()
    xs = np.arange(1, resolution + 1) * (math.pi / resolution)
    vals = _ratio(gfun, xs)
    k = int(np.argmin(vals))
    best = float(vals[k])
    lo = xs[k - 1] if k > 0 else xs[0] * 1e-6
    hi = xs[min(k + 1, resolution - 1)]
    _, refined = _golden_min(lambda x: float(_ratio(gfun, x)), float(lo), float(hi))
    return min(best, refined)


def expected_cut_lower_bound(g: Graph, gfun: AdmissibleG, energy_value: float) -> float:
    return guarantee_ratio(gfun) * (g.m / 2.0 - energy_value / 4.0)


COMPARE_FIELDS = ["graph", "n", "m", "method", "seed", "cut", "bound", "maxcut", "wall_time"]


def compare_heuristics(
    g: Graph,
    seeds: Sequence[int],
    name: str = "graph",
    rounds: int = 64,
    maxcut_cap: int = 24,
    params: DescentParams | None = None,
) -> list[dict]:
    """Cut found by cosine descent + rounding per seed, by the exact engine, and the exact MaxCut."""
    rows = []
    maxcut = None
    if g.n <= maxcut_cap:
        try:
            t0 = time.perf_counter()
            maxcut = maxcut_bruteforce(g, cap=maxcut_cap).value
            rows.append(_row(name, g, "oracle", "", maxcut, float(maxcut), maxcut, time.perf_counter() - t0))
        except CapExceeded:
            maxcut = None
    # the engine is deterministic from its default start, so it gets one row
    t0 = time.perf_counter()
    d, _ = decompose(g)
    cut = cross_edges(g, d.a | d.c, d.b)
    engine_bound = float(judicious_factor(g.max_degree) * g.m) if g.m else 0.0
    rows.append(_row(name, g, "engine", "", cut, engine_bound, maxcut, time.perf_counter() - t0))

    cos_ratio = guarantee_ratio(COSINE_G)
    for seed in seeds:
        t0 = time.perf_counter()
        theta, hist = descend_cosine(g, seed, params)
        cut = round_best_of(g, theta, rounds, seed)
        bound = cos_ratio * (g.m / 2.0 - hist[-1] / 4.0)
        rows.append(_row(name, g, "bmz", seed, cut, bound, maxcut, time.perf_counter() - t0))
    return rows


def _row(name, g, method, seed, cut, bound, maxcut, wall) -> dict:
    return {
        "graph": name,
        "n": g.n,
        "m": g.m,
        "method": method,
        "seed": seed,
        "cut": cut,
        "bound": round(bound, 6),
        "maxcut": "" if maxcut is None else maxcut,
        "wall_time": round(wall, 6),
    }


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COMPARE_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
