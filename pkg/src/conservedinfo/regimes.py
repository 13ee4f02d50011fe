"""Regime classification under a uniform baseline.

With ``p = |T|/N`` the baseline probability of the target and ``q`` the
informed one, the coarsened conserved active information is
``log[p(1-p) / (q(1-q))]``, whose sign is that of ``(q-p)(p+q-1)``.  For
``p < 1/2`` this splits the ``q`` axis into three regimes plus the two
boundaries where the total information is unchanged.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

from .distributions import Event, FiniteDistribution, event_probability
from .errors import POutOfRangeError, QOutOfRangeError, TargetTooLargeError
from .extreal import BITS, ExtReal, LogBase
from .measures import _log_ratio, binary_cai

__all__ = [
    "Regime",
    "RegimeReport",
    "LargeBaselineWarning",
    "classify_regime",
    "regime_report",
    "regime_from_distributions",
    "BOUNDARY_TOL",
    "INTERPRETATIONS",
]

BOUNDARY_TOL = 1e-12
SOFT_P_LIMIT = 0.1


class LargeBaselineWarning(UserWarning):
    """The baseline target probability is not small (p > 0.1)."""


class Regime(str, enum.Enum):
    HARMFUL_TO_TARGET = "HarmfulToTarget"
    MILD_KNOWLEDGE = "MildKnowledge"
    STRONG_KNOWLEDGE = "StrongKnowledge"
    BOUNDARY_EQUAL = "BoundaryEqual"
    BOUNDARY_MIRROR = "BoundaryMirror"

    def __str__(self) -> str:
        return self.value


INTERPRETATIONS = {
    Regime.HARMFUL_TO_TARGET: "Target harder, system more ordered",
    Regime.MILD_KNOWLEDGE: "Target easier, system more disordered",
    Regime.STRONG_KNOWLEDGE: "Target much easier AND system more ordered (jackpot)",
    Regime.BOUNDARY_EQUAL: "Target unchanged, total information unchanged",
    Regime.BOUNDARY_MIRROR: "Target easier, total information unchanged",
}


def _check_pq(p: float, q: float, warn: bool) -> None:
    if not (0.0 < p < 0.5):
        raise POutOfRangeError(f"baseline probability p must satisfy 0 < p < 1/2, got {p!r}")
    if not (0.0 <= q <= 1.0):
        raise QOutOfRangeError(f"target probability q must lie in [0, 1], got {q!r}")
    if warn and p > SOFT_P_LIMIT:
        warnings.warn(
            f"p = {p:g} is not small; regimes still hold for any p < 1/2",
            LargeBaselineWarning,
            stacklevel=3,
        )


def classify_regime(p: float, q: float, warn: bool = True) -> Regime:
    """Regime of the pair ``(p, q)``; boundaries win within ``BOUNDARY_TOL``."""
    _check_pq(p, q, warn)
    if abs(q - p) <= BOUNDARY_TOL:
        return Regime.BOUNDARY_EQUAL
    if abs(q - (1.0 - p)) <= BOUNDARY_TOL:
        return Regime.BOUNDARY_MIRROR
    if q < p:
        return Regime.HARMFUL_TO_TARGET
    if q < 1.0 - p:
        return Regime.MILD_KNOWLEDGE
    return Regime.STRONG_KNOWLEDGE


@dataclass(frozen=True)
class RegimeReport:
    p: float
    q: float
    regime: Regime
    active_info: ExtReal
    cai_coarsened: ExtReal
    base: LogBase = BITS

    @property
    def interpretation(self) -> str:
        return INTERPRETATIONS[self.regime]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "regime": self.regime.value,
            "active_info": self.active_info.to_json(),
            "cai_coarsened": self.cai_coarsened.to_json(),
            "interpretation": self.interpretation,
            "base": str(self.base),
        }


def regime_report(p: float, q: float, base: LogBase = BITS, warn: bool = True) -> RegimeReport:
    regime = classify_regime(p, q, warn=warn)
    return RegimeReport(
        p=p,
        q=q,
        regime=regime,
        active_info=base.from_nats(_log_ratio(q, p)),
        cai_coarsened=binary_cai(p, q, base),
        base=base,
    )


def regime_from_distributions(
    P2: FiniteDistribution, T: Event, base: LogBase = BITS, warn: bool = True
) -> RegimeReport:
    """Report for ``P2`` against the uniform baseline on the same space."""
    n = P2.size
    T.check_bounds(n)
    if not 2 * len(T) < n:
        raise TargetTooLargeError(f"target has {len(T)} of {n} outcomes; need |T| < N/2")
    p = len(T) / n
    q = event_probability(P2, T)
    return regime_report(p, q, base, warn=warn)

