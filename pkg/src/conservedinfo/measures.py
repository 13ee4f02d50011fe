"""Information functionals on finite distributions.

All internals work in nats and convert to the requested base once, at the
end.  Log-based results are :class:`~conservedinfo.extreal.ExtReal` values
following these conventions:

* ``log(0/0) = 0``, applied per event for active information and per
  outcome for conserved active information;
* ``log(a/0) = +inf`` and ``log(0/b) = -inf`` for ``a, b > 0``;
* a sum that mixes ``+inf`` and ``-inf`` terms is undefined (NaN).

Conserved active information is oriented as ``H(X2) - H(X1) =
sum_x log(p1(x)/p2(x))``.  On the two-cell partition ``{T, T^c}`` it is the
negative of ``I+(T) + I+(T^c)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import (
    Event,
    FiniteDistribution,
    coarsen,
    event_probability,
    same_space,
)
from .errors import InconsistentReportError, NotFullySupportedError
from .extreal import BITS, ExtReal, LogBase

__all__ = [
    "MeasureReport",
    "self_information",
    "active_information",
    "entropy",
    "total_information",
    "conserved_active_information",
    "coarsened_cai",
    "binary_cai",
    "kl_divergence",
    "total_variation",
    "pinsker_bound",
    "uniform_baseline_identity",
    "uniform_baseline_tv_bound",
    "full_report",
    "EQUALITY_TOL",
]

EQUALITY_TOL = 1e-12
CROSSCHECK_TOL = 1e-9


def _log_ratio_terms(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise ``ln(a/b)`` with the 0/0, a/0 and 0/b conventions."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(np.broadcast(a, b).shape)
    both = (a > 0) & (b > 0)
    out[both] = np.log(a[both]) - np.log(b[both])
    out[(a > 0) & (b <= 0)] = math.inf
    out[(a <= 0) & (b > 0)] = -math.inf
    return out


def _log_ratio(a: float, b: float) -> float:
    if a > 0 and b > 0:
        return math.log(a) - math.log(b)
    if a > 0:
        return math.inf
    if b > 0:
        return -math.inf
    return 0.0


def _sum_ext(terms: np.ndarray) -> float:
    has_pos = bool(np.any(terms == math.inf))
    has_neg = bool(np.any(terms == -math.inf))
    if has_pos and has_neg:
        return math.nan
    if has_pos:
        return math.inf
    if has_neg:
        return -math.inf
    return math.fsum(terms)


def self_information(P: FiniteDistribution, T: Event, base: LogBase = BITS) -> ExtReal:
    """``-log P(T)``; ``+inf`` for a null event."""
    pt = event_probability(P, T)
    return base.from_nats(-math.log(pt) if pt > 0 else math.inf)


def active_information(
    P1: FiniteDistribution, P2: FiniteDistribution, T: Event, base: LogBase = BITS
) -> ExtReal:
    """``log P2(T)/P1(T)``: baseline ``P1`` against informed ``P2``."""
    same_space(P1, P2)
    return base.from_nats(_log_ratio(event_probability(P2, T), event_probability(P1, T)))


def entropy(P: FiniteDistribution, base: LogBase = BITS) -> float:
    p = P.probs[P.probs > 0]
    h = -math.fsum(p * np.log(p))
    return max(h, 0.0) / base.ln


def total_information(P: FiniteDistribution, base: LogBase = BITS) -> ExtReal:
    """Unweighted ``-sum_x log p(x)``; ``+inf`` unless fully supported."""
    if not P.fully_supported:
        return base.from_nats(math.inf)
    return base.from_nats(-math.fsum(np.log(P.probs)))


def conserved_active_information(
    P1: FiniteDistribution, P2: FiniteDistribution, base: LogBase = BITS
) -> ExtReal:
    """``sum_x log(p1(x)/p2(x))``, i.e. ``H(X2) - H(X1)`` in total information."""
    same_space(P1, P2)
    return base.from_nats(_sum_ext(_log_ratio_terms(P1.probs, P2.probs)))


def binary_cai(p: float, q: float, base: LogBase = BITS) -> ExtReal:
    """Conserved active information between ``(p, 1-p)`` and ``(q, 1-q)``.

    Same arithmetic as :func:`conserved_active_information` on the two-cell
    space, without building distributions.
    """
    # two terms: plain addition already gives inf + -inf = nan
    return base.from_nats(_log_ratio(p, q) + _log_ratio(1.0 - p, 1.0 - q))


def coarsened_cai(
    P1: FiniteDistribution, P2: FiniteDistribution, T: Event, base: LogBase = BITS
) -> ExtReal:
    """``log[p(1-p) / (q(1-q))]`` with ``p = P1(T)``, ``q = P2(T)``."""
    same_space(P1, P2)
    return conserved_active_information(coarsen(P1, T), coarsen(P2, T), base)


def _kl_nats(Pa: FiniteDistribution, Pb: FiniteDistribution) -> float:
    a, b = Pa.probs, Pb.probs
    if np.all(np.abs(a - b) <= EQUALITY_TOL):
        return 0.0
    on = a > 0
    if np.any(b[on] <= 0):
        return math.inf
    d = math.fsum(a[on] * (np.log(a[on]) - np.log(b[on])))
    return max(d, 0.0)


def kl_divergence(Pa: FiniteDistribution, Pb: FiniteDistribution, base: LogBase = BITS) -> ExtReal:
    """``D(Pa || Pb) = sum pa log(pa/pb)``.

    Exactly zero when the two agree entrywise to within 1e-12.
    """
    same_space(Pa, Pb)
    return base.from_nats(_kl_nats(Pa, Pb))


def total_variation(P1: FiniteDistribution, P2: FiniteDistribution) -> float:
    same_space(P1, P2)
    tv = 0.5 * math.fsum(np.abs(P2.probs - P1.probs))
    return min(max(tv, 0.0), 1.0)


def pinsker_bound(
    P1: FiniteDistribution, P2: FiniteDistribution, base: LogBase = BITS
) -> ExtReal:
    """``sqrt(D(P2 || P1) / 2)`` with the divergence in nats.

    Upper-bounds ``total_variation(P1, P2)``; ``+inf`` when the divergence is.
    The bound lives on the probability scale, so ``base`` does not change it.
    """
    same_space(P1, P2)
    return ExtReal(math.sqrt(_kl_nats(P2, P1) / 2.0))


def _uniform_like(P: FiniteDistribution) -> FiniteDistribution:
    n = P.size
    return FiniteDistribution(P.labels, np.full(n, 1.0 / n))


def uniform_baseline_identity(
    P2: FiniteDistribution, base: LogBase = BITS
) -> tuple[ExtReal, ExtReal]:
    """``(N * D(U || P2), I_cons(U, P2))`` for the uniform baseline ``U`` on P2's labels.

    The two components coincide for every fully supported ``P2``.
    """
    if not P2.fully_supported:
        raise NotFullySupportedError("uniform-baseline identity needs a fully supported P2")
    U = _uniform_like(P2)
    return P2.size * kl_divergence(U, P2, base), conserved_active_information(U, P2, base)


def uniform_baseline_tv_bound(P2: FiniteDistribution) -> float:
    """``sqrt(I_cons(U, P2) / (2N))`` in nats; bounds ``TV(P2, U)``."""
    if not P2.fully_supported:
        raise NotFullySupportedError("uniform-baseline bound needs a fully supported P2")
    cai = float(conserved_active_information(_uniform_like(P2), P2, LogBase(math.e)))
    return math.sqrt(max(cai, 0.0) / (2 * P2.size))


@dataclass(frozen=True)
class MeasureReport:
    """Every measure for one ``(P1, P2, T)`` triple.

    ``kl_12`` is ``D(P1 || P2)``; ``kl_21`` is ``D(P2 || P1)``, the divergence
    behind ``pinsker_bound``.  ``regime`` is filled in only when ``P1`` is
    uniform and ``0 < P1(T) < 1/2``.
    """

    endogenous_info: ExtReal
    exogenous_info: ExtReal
    active_info: ExtReal
    total_info_1: ExtReal
    total_info_2: ExtReal
    entropy_1: float
    entropy_2: float
    cai_full: ExtReal
    cai_coarsened: ExtReal
    kl_12: ExtReal
    kl_21: ExtReal
    tv: float
    pinsker_bound: ExtReal
    base: LogBase = field(default=BITS)
    p: float = math.nan
    q: float = math.nan
    regime: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.tv <= 1.0:
            raise InconsistentReportError(f"total variation {self.tv} outside [0, 1]")
        for name in ("kl_12", "kl_21"):
            v = getattr(self, name)
            if v.is_finite and v < 0:
                raise InconsistentReportError(f"{name} is negative: {v}")
        if self.kl_21.is_finite and self.pinsker_bound < self.tv - EQUALITY_TOL:
            raise InconsistentReportError(
                f"Pinsker bound {self.pinsker_bound} below total variation {self.tv}"
            )

    def to_dict(self) -> dict:
        """JSON-ready mapping; infinities become strings."""
        out = {}
        for key, value in self.__dict__.items():
            if isinstance(value, ExtReal):
                out[key] = value.to_json()
            elif key == "base":
                out[key] = str(value)
            else:
                out[key] = value
        return out


def full_report(
    P1: FiniteDistribution, P2: FiniteDistribution, T: Event, base: LogBase = BITS
) -> MeasureReport:
    """Compute every measure and cross-check the two routes to ``I_cons``."""
    from .regimes import classify_regime

    same_space(P1, P2)
    h1 = total_information(P1, base)
    h2 = total_information(P2, base)
    cai = conserved_active_information(P1, P2, base)
    if h1.is_finite and h2.is_finite:
        diff = h2 - h1
        if not math.isclose(cai, diff, rel_tol=CROSSCHECK_TOL, abs_tol=CROSSCHECK_TOL):
            raise InconsistentReportError(
                f"conserved active information {cai} disagrees with H2 - H1 = {diff}"
            )

    p = event_probability(P1, T)
    q = event_probability(P2, T)
    regime = None
    is_uniform = np.all(np.abs(P1.probs - 1.0 / P1.size) <= EQUALITY_TOL)
    if is_uniform and 0.0 < p < 0.5:
        regime = classify_regime(p, q, warn=False).value

    return MeasureReport(
        endogenous_info=self_information(P1, T, base),
        exogenous_info=self_information(P2, T, base),
        active_info=active_information(P1, P2, T, base),
        total_info_1=h1,
        total_info_2=h2,
        entropy_1=entropy(P1, base),
        entropy_2=entropy(P2, base),
        cai_full=cai,
        cai_coarsened=coarsened_cai(P1, P2, T, base),
        kl_12=kl_divergence(P1, P2, base),
        kl_21=kl_divergence(P2, P1, base),
        tv=total_variation(P1, P2),
        pinsker_bound=pinsker_bound(P1, P2),
        base=base,
        p=p,
        q=q,
        regime=regime,
    )
