"""Active information and conserved active information on finite spaces."""

__version__ = "0.1.0"

from .distributions import (
    Event,
    FiniteDistribution,
    bernoulli,
    coarsen,
    event_probability,
    merge_spaces,
    new_distribution,
    point_mass,
    product,
    product_event,
    specification_event,
    uniform,
)
from .extreal import BITS, NATS, NEG_INF, POS_INF, UNDEFINED, ExtReal, LogBase
from .measures import (
    MeasureReport,
    active_information,
    binary_cai,
    coarsened_cai,
    conserved_active_information,
    entropy,
    full_report,
    kl_divergence,
    pinsker_bound,
    self_information,
    total_information,
    total_variation,
    uniform_baseline_identity,
    uniform_baseline_tv_bound,
)
from .regimes import Regime, RegimeReport, classify_regime, regime_from_distributions, regime_report
