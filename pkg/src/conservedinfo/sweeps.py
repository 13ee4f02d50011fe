"""Bernoulli parameter sweeps that produce the data behind the curve and
surface plots: total information and entropy of ``Ber(p)``, and conserved
active information and KL divergence between ``Ber(p)`` and ``Ber(q)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import bernoulli
from .extreal import BITS, LogBase
from .measures import (
    conserved_active_information,
    entropy,
    kl_divergence,
    total_information,
)

__all__ = ["SWEEP_KINDS", "SweepSpec", "sweep_header", "sweep_rows", "sweep_value"]

SWEEP_KINDS = ("total_info_curve", "entropy_curve", "cai_surface", "kl_surface")
SURFACES = ("cai_surface", "kl_surface")


@dataclass(frozen=True)
class SweepSpec:
    kind: str
    grid_min: float = 0.01
    grid_max: float = 0.99
    grid_steps: int = 99
    q_min: float | None = None
    q_max: float | None = None
    q_steps: int | None = None
    base: LogBase = BITS

    def __post_init__(self):
        if self.kind not in SWEEP_KINDS:
            raise ValueError(f"unknown sweep kind {self.kind!r}; expected one of {SWEEP_KINDS}")
        for lo, hi, n, axis in ((self.grid_min, self.grid_max, self.grid_steps, "p"),
                                (self.q_lo, self.q_hi, self.q_n, "q")):
            if not 0.0 < lo < hi < 1.0:
                raise ValueError(f"{axis} grid needs 0 < min < max < 1, got [{lo}, {hi}]")
            if int(n) != n or n < 2:
                raise ValueError(f"{axis} grid needs at least 2 steps, got {n}")

    @property
    def surface(self) -> bool:
        return self.kind in SURFACES

    @property
    def q_lo(self) -> float:
        return self.grid_min if self.q_min is None else self.q_min

    @property
    def q_hi(self) -> float:
        return self.grid_max if self.q_max is None else self.q_max

    @property
    def q_n(self) -> int:
        return self.grid_steps if self.q_steps is None else self.q_steps


def _grid(lo: float, hi: float, n: int) -> np.ndarray:
    # Rounding keeps nominal points such as 0.5 exact in the output.
    return np.round(np.linspace(lo, hi, int(n)), 12)


def sweep_value(kind: str, p: float, q: float | None = None, base: LogBase = BITS):
    """The plotted quantity at one grid point."""
    P1 = bernoulli(p)
    if kind == "total_info_curve":
        return total_information(P1, base)
    if kind == "entropy_curve":
        return entropy(P1, base)
    P2 = bernoulli(q)
    if kind == "cai_surface":
        return conserved_active_information(P1, P2, base)
    if kind == "kl_surface":
        return kl_divergence(P1, P2, base)
    raise ValueError(f"unknown sweep kind {kind!r}")


def sweep_header(spec: SweepSpec) -> tuple[str, ...]:
    return ("p", "q", "value") if spec.surface else ("p", "value")


def sweep_rows(spec: SweepSpec):
    """Rows in grid order: ``p`` outer, ``q`` inner for surfaces."""
    ps = _grid(spec.grid_min, spec.grid_max, spec.grid_steps)
    if not spec.surface:
        for p in ps:
            yield float(p), sweep_value(spec.kind, float(p), base=spec.base)
        return
    qs = _grid(spec.q_lo, spec.q_hi, spec.q_n)
    for p in ps:
        for q in qs:
            yield float(p), float(q), sweep_value(spec.kind, float(p), float(q), spec.base)
