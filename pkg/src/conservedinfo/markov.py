"""Random walks on connected d-regular graphs.

The simple walk moves to a uniformly chosen neighbour, so its transition
matrix is doubly stochastic and the uniform distribution is stationary.
A lazy walk (stay put with probability ``laziness``) removes the period-2
oscillation on bipartite graphs.
"""

from __future__ import annotations

import math
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .distributions import Event, FiniteDistribution, event_probability
from .errors import (
    DuplicateEdgeError,
    GraphError,
    NotConnectedError,
    NotRegularError,
    SelfLoopError,
    SpaceMismatchError,
)
from .extreal import BITS, ExtReal, LogBase
from .measures import _log_ratio, binary_cai
from .regimes import Regime, classify_regime

__all__ = [
    "RegularGraph",
    "WalkConfig",
    "TrajectoryPoint",
    "build_regular_graph",
    "cycle_graph",
    "step",
    "iterate",
    "trajectory",
    "MAX_VERTICES",
]

MAX_VERTICES = 10**5


@dataclass(frozen=True, eq=False)
class RegularGraph:
    """Validated connected d-regular simple graph on vertices ``0..n-1``.

    Build with :func:`build_regular_graph`.
    """

    n: int
    edges: frozenset
    degree: int
    bipartite: bool
    neighbors: np.ndarray = field(repr=False)


def _two_color(n: int, adj: list[list[int]]) -> tuple[bool, bool]:
    """BFS from vertex 0.  Returns (connected, bipartite)."""
    color = [-1] * n
    color[0] = 0
    queue = deque([0])
    bipartite = True
    seen = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if color[v] < 0:
                color[v] = 1 - color[u]
                seen += 1
                queue.append(v)
            elif color[v] == color[u]:
                bipartite = False
    return seen == n, bipartite


def build_regular_graph(n: int, edges: Iterable[tuple[int, int]]) -> RegularGraph:
    """Validate an undirected edge list on ``n`` vertices."""
    if int(n) != n or n < 1:
        raise GraphError(f"vertex count must be a positive integer, got {n!r}")
    n = int(n)
    if n > MAX_VERTICES:
        raise GraphError(f"{n} vertices exceeds the cap of {MAX_VERTICES}")
    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} does not have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)

    degrees = sorted({len(a) for a in adj})
    if len(degrees) != 1:
        raise NotRegularError(f"vertex degrees are not all equal: {degrees}")
    d = degrees[0]
    connected, bipartite = _two_color(n, adj)
    if not connected:
        raise NotConnectedError("graph is not connected")
    nbrs = np.array([sorted(a) for a in adj], dtype=np.int64).reshape(n, d)
    nbrs.setflags(write=False)
    return RegularGraph(n=n, edges=frozenset(seen), degree=d, bipartite=bipartite and n > 1,
                        neighbors=nbrs)


def cycle_graph(n: int) -> RegularGraph:
    return build_regular_graph(n, [(i, (i + 1) % n) for i in range(n)])


@dataclass(frozen=True)
class WalkConfig:
    """``laziness=None`` picks 0.5 on bipartite graphs and 0 otherwise."""

    steps: int = 100
    laziness: float | None = None

    def __post_init__(self):
        if self.laziness is not None and not (0.0 <= self.laziness < 1.0):
            raise ValueError(f"laziness must lie in [0, 1), got {self.laziness!r}")
        if int(self.steps) != self.steps or self.steps < 0:
            raise ValueError(f"steps must be a nonnegative integer, got {self.steps!r}")

    def resolve_laziness(self, G: RegularGraph) -> float:
        if self.laziness is not None:
            return self.laziness
        return 0.5 if G.bipartite else 0.0


@dataclass(frozen=True)
class TrajectoryPoint:
    t: int
    q_t: float
    active_info_t: ExtReal
    cai_coarsened_t: ExtReal
    regime_t: Regime | None


def _check_space(P: FiniteDistribution, G: RegularGraph) -> None:
    if P.labels != tuple(range(G.n)):
        raise SpaceMismatchError(
            f"distribution labels must be the graph's vertices 0..{G.n - 1}"
        )


def _push(probs: np.ndarray, G: RegularGraph, laziness: float) -> np.ndarray:
    if G.degree == 0:
        return probs.copy()
    moved = probs[G.neighbors].sum(axis=1) / G.degree
    return laziness * probs + (1.0 - laziness) * moved


def step(P: FiniteDistribution, G: RegularGraph, laziness: float = 0.0) -> FiniteDistribution:
    """One step of the (lazy) walk applied to the distribution ``P``."""
    _check_space(P, G)
    if not 0.0 <= laziness < 1.0:
        raise ValueError(f"laziness must lie in [0, 1), got {laziness!r}")
    return FiniteDistribution(P.labels, _push(P.probs, G, laziness))


def iterate(
    P: FiniteDistribution, G: RegularGraph, steps: int, laziness: float = 0.0
) -> FiniteDistribution:
    """``steps`` applications of :func:`step`."""
    _check_space(P, G)
    probs = P.probs
    for _ in range(steps):
        probs = _push(probs, G, laziness)
    return FiniteDistribution(P.labels, probs)


def trajectory(
    P1: FiniteDistribution,
    G: RegularGraph,
    T: Event,
    cfg: WalkConfig = WalkConfig(),
    base: LogBase = BITS,
) -> list[TrajectoryPoint]:
    """Run the walk from ``P1`` and measure each ``P_t`` against ``P1`` on ``T``.

    Point ``t`` holds ``q_t = P_t(T)``, ``log(q_t/p)`` and the coarsened
    conserved active information for ``p = P1(T)``.  Regimes are attached
    only when ``0 < p < 1/2`` and ``|T| < n/2``.
    """
    _check_space(P1, G)
    T.check_bounds(G.n)
    lazy = cfg.resolve_laziness(G)
    idx = np.asarray(T.indices, dtype=np.int64)
    p = event_probability(P1, T)
    label_regimes = 0.0 < p < 0.5 and 2 * len(T) < G.n

    points = []
    probs = P1.probs
    for t in range(cfg.steps + 1):
        if t:
            probs = _push(probs, G, lazy)
        q = p if t == 0 else min(max(math.fsum(probs[idx]), 0.0), 1.0)
        regime = classify_regime(p, q, warn=False) if label_regimes else None
        points.append(
            TrajectoryPoint(
                t=t,
                q_t=q,
                active_info_t=base.from_nats(_log_ratio(q, p)),
                cai_coarsened_t=binary_cai(p, q, base),
                regime_t=regime,
            )
        )
    return points
