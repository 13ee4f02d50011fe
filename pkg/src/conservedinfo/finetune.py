"""Fine-tuning estimates over a discretized interval.

A parametric family of continuous distributions on ``[lo, hi]`` is turned
into PMFs over ``(hi - lo)/h`` equal cells by integrating each member over
every cell.  The tuning probability of a target interval is the largest
target mass over a finite hyperparameter grid; with the observation
forcing ``P2(T) = 1`` the active information is ``-log p_max``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.special import log_ndtr, logsumexp

from .distributions import Event, FiniteDistribution, event_probability
from .errors import (
    DegenerateScaleError,
    DeltaOutOfRangeError,
    EmptyTargetError,
    InconsistentReportError,
    ParamOutOfBoundsError,
)
from .extreal import BITS, ExtReal, LogBase

__all__ = [
    "FAMILY_KINDS",
    "ParamFamily",
    "TuningResult",
    "family_pmf",
    "target_event",
    "tuning_probability",
    "fine_tuning_report",
    "fine_tuned_flags",
]

FAMILY_KINDS = ("truncated_normal", "uniform_window")
MAX_CELLS = 10**7


@dataclass(frozen=True, eq=False)
class ParamFamily:
    """A family on ``domain`` discretized at resolution ``h``.

    ``grid`` lists hyperparameter tuples: ``(mean, sd)`` for
    ``truncated_normal`` and ``(center, width)`` for ``uniform_window``.
    """

    kind: str
    domain: tuple[float, float]
    h: float
    grid: tuple[tuple[float, ...], ...]
    edges: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ParamOutOfBoundsError(f"unknown family kind {self.kind!r}; expected one of {FAMILY_KINDS}")
        lo, hi = (float(x) for x in self.domain)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ParamOutOfBoundsError(f"domain must be a finite interval [lo, hi] with lo < hi, got {self.domain!r}")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ParamOutOfBoundsError(f"grid resolution h must be positive, got {self.h!r}")
        n = round((hi - lo) / self.h)
        if n < 1 or abs(n * self.h - (hi - lo)) > 1e-9 * (hi - lo):
            raise ParamOutOfBoundsError(f"h = {self.h!r} does not divide the domain length {hi - lo!r}")
        if n > MAX_CELLS:
            raise ParamOutOfBoundsError(f"{n} cells exceeds the cap of {MAX_CELLS}")
        grid = tuple(tuple(float(v) for v in xi) for xi in self.grid)
        if not grid:
            raise ParamOutOfBoundsError("hyperparameter grid is empty")
        edges = np.linspace(lo, hi, n + 1)
        edges.setflags(write=False)
        object.__setattr__(self, "domain", (lo, hi))
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "edges", edges)

    @property
    def n_cells(self) -> int:
        return self.edges.size - 1

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    def with_grid(self, grid: Sequence[Sequence[float]]) -> ParamFamily:
        return ParamFamily(self.kind, self.domain, self.h, tuple(map(tuple, grid)))


def _normal_cell_log_mass(edges: np.ndarray, mean: float, sd: float) -> np.ndarray:
    z = (edges - mean) / sd
    zlo, zhi = z[:-1], z[1:]
    out = np.empty(zlo.size)
    # Work in whichever tail keeps the CDF values away from 1.
    left = (zlo + zhi) <= 0
    a, b = log_ndtr(zhi[left]), log_ndtr(zlo[left])
    out[left] = a + np.log1p(-np.exp(b - a))
    a, b = log_ndtr(-zlo[~left]), log_ndtr(-zhi[~left])
    out[~left] = a + np.log1p(-np.exp(b - a))
    return out


def _window_cell_mass(edges: np.ndarray, center: float, width: float) -> np.ndarray:
    wlo, whi = center - width / 2, center + width / 2
    overlap = np.minimum(edges[1:], whi) - np.maximum(edges[:-1], wlo)
    return np.clip(overlap, 0.0, None)


def family_pmf(family: ParamFamily, xi: Sequence[float]) -> FiniteDistribution:
    """Member ``xi`` of the family as a PMF over the grid cells (labels ``0..n-1``),
    renormalized to the domain.
    """
    if len(xi) != 2 or not all(math.isfinite(v) for v in xi):
        raise ParamOutOfBoundsError(f"hyperparameter must be two finite numbers, got {tuple(xi)!r}")
    loc, scale = float(xi[0]), float(xi[1])
    if scale <= 0:
        raise DegenerateScaleError(f"scale parameter must be positive, got {scale!r}")
    labels = tuple(range(family.n_cells))
    if family.kind == "truncated_normal":
        logm = _normal_cell_log_mass(family.edges, loc, scale)
        total = logsumexp(logm)
        if not math.isfinite(total):
            raise ParamOutOfBoundsError(f"normal {tuple(xi)!r} puts no representable mass on the domain")
        return FiniteDistribution(labels, np.exp(logm - total))
    mass = _window_cell_mass(family.edges, loc, scale)
    if not mass.sum() > 0:
        raise ParamOutOfBoundsError(f"window {tuple(xi)!r} does not overlap the domain")
    return FiniteDistribution.normalized(labels, mass)


def target_event(family: ParamFamily, interval: Sequence[float]) -> Event:
    """Cells whose centers lie in the closed interval ``[a, b]``."""
    a, b = (float(x) for x in interval)
    lo, hi = family.domain
    if not lo <= a <= b <= hi:
        raise ParamOutOfBoundsError(f"target [{a}, {b}] must satisfy {lo} <= a <= b <= {hi}")
    slack = 1e-12 * (hi - lo)
    c = family.centers
    idx = np.flatnonzero((c >= a - slack) & (c <= b + slack))
    if idx.size == 0:
        raise EmptyTargetError(f"no cell center falls in [{a}, {b}]")
    return Event(idx)


def tuning_probability(family: ParamFamily, T: Event) -> tuple[tuple[float, ...], float]:
    """Exhaustive ``max_xi P(T; xi)``.  Ties go to the earliest grid entry."""
    best_xi, best = family.grid[0], -1.0
    for xi in family.grid:
        pt = event_probability(family_pmf(family, xi), T)
        if pt > best:
            best_xi, best = xi, pt
    return best_xi, best


@dataclass(frozen=True)
class TuningResult:
    xi_star: tuple[float, ...]
    p_max: float
    delta: float
    fine_tuned: bool
    active_info: ExtReal
    base: LogBase = BITS

    def to_dict(self) -> dict:
        return {
            "xi_star": list(self.xi_star),
            "p_max": self.p_max,
            "delta": self.delta,
            "fine_tuned": self.fine_tuned,
            "active_info": self.active_info.to_json(),
            "threshold": self.base.from_nats(-math.log(self.delta)).to_json(),
            "base": str(self.base),
        }


def fine_tuned_flags(p_max: float, delta: float, base: LogBase = BITS) -> tuple[bool, bool]:
    """The two equivalent fine-tuning tests: ``p_max < delta`` and
    ``-log p_max > -log delta``.
    """
    ain = base.from_nats(-math.log(p_max) if p_max > 0 else math.inf)
    return p_max < delta, ain > base.from_nats(-math.log(delta))


def fine_tuning_report(
    family: ParamFamily, T: Event, delta: float, base: LogBase = BITS
) -> TuningResult:
    if not 0.0 < delta < 1.0:
        raise DeltaOutOfRangeError(f"delta must lie in (0, 1), got {delta!r}")
    xi_star, p_max = tuning_probability(family, T)
    by_prob, by_info = fine_tuned_flags(p_max, delta, base)
    if by_prob != by_info and not math.isclose(p_max, delta, rel_tol=1e-12):
        raise InconsistentReportError(
            f"fine-tuning flags disagree for p_max={p_max!r}, delta={delta!r}"
        )
    return TuningResult(
        xi_star=xi_star,
        p_max=p_max,
        delta=delta,
        fine_tuned=by_prob,
        active_info=base.from_nats(-math.log(p_max) if p_max > 0 else math.inf),
        base=base,
    )
