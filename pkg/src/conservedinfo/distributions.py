"""Finite probability distributions, events, and the operations that build
new spaces out of old ones (products, coarsenings, merged spaces).

Distributions are densities with respect to counting measure on a finite,
ordered label list.  Everything here is immutable.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DuplicateLabelError,
    IndexOutOfRangeError,
    LengthMismatchError,
    NegativeMassError,
    NotNormalizedError,
    ProductTooLargeError,
    SpaceMismatchError,
)

__all__ = [
    "FiniteDistribution",
    "Event",
    "new_distribution",
    "uniform",
    "bernoulli",
    "point_mass",
    "product",
    "product_event",
    "event_probability",
    "coarsen",
    "merge_spaces",
    "specification_event",
    "same_space",
    "NORMALIZATION_TOL",
    "NEGATIVE_TOL",
    "MAX_OUTCOMES",
]

NORMALIZATION_TOL = 1e-9
NEGATIVE_TOL = 1e-12
MAX_OUTCOMES = 10**7

Label = Hashable


@dataclass(frozen=True, eq=False)
class FiniteDistribution:
    """A validated PMF over an ordered list of unique labels.

    Use :func:`new_distribution` (or the helpers below) rather than calling
    the constructor with unchecked data; the constructor does validate, but
    the helpers give friendlier inputs.
    """

    labels: tuple
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        probs = np.array(self.probs, dtype=float).reshape(-1)
        if len(labels) != probs.size:
            raise LengthMismatchError(
                f"{len(labels)} labels but {probs.size} probabilities"
            )
        if probs.size == 0:
            raise NotNormalizedError("distribution needs at least one outcome")
        if len(set(labels)) != len(labels):
            seen = set()
            dup = next(lab for lab in labels if lab in seen or seen.add(lab))
            raise DuplicateLabelError(f"duplicate label {dup!r}")
        if not np.all(np.isfinite(probs)):
            raise NotNormalizedError("probabilities must be finite numbers")
        if probs.min() < -NEGATIVE_TOL:
            i = int(np.argmin(probs))
            raise NegativeMassError(f"negative mass {probs[i]!r} at label {labels[i]!r}")
        probs = np.clip(probs, 0.0, None)
        total = math.fsum(probs)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NotNormalizedError(f"probabilities sum to {total!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def normalized(cls, labels: Sequence[Label], weights: Iterable[float]) -> FiniteDistribution:
        """Build a distribution from nonnegative weights by dividing by their sum."""
        w = np.asarray(list(weights), dtype=float)
        if w.size and w.min() < 0:
            raise NegativeMassError("weights must be nonnegative")
        total = w.sum()
        if not (total > 0 and math.isfinite(total)):
            raise NotNormalizedError("weights must have a positive finite sum")
        return cls(tuple(labels), w / total)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def support(self) -> Event:
        return Event(np.flatnonzero(self.probs > 0))

    @property
    def fully_supported(self) -> bool:
        return bool(np.all(self.probs > 0))

    def prob_of(self, label: Label) -> float:
        return float(self.probs[self.labels.index(label)])

    def index_of(self, label: Label) -> int:
        return self.labels.index(label)

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.probs.tolist()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteDistribution):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.probs, other.probs)

    def __hash__(self):
        return hash((self.labels, self.probs.tobytes()))

    def __repr__(self) -> str:
        body = ", ".join(f"{lab!r}: {p:.6g}" for lab, p in zip(self.labels[:8], self.probs))
        more = ", ..." if self.size > 8 else ""
        return f"FiniteDistribution({{{body}{more}}})"


@dataclass(frozen=True)
class Event:
    """A set of outcome indices, stored sorted."""

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        idx = [int(i) for i in np.asarray(self.indices, dtype=np.int64).reshape(-1)]
        if len(set(idx)) != len(idx):
            raise IndexOutOfRangeError("event indices must be distinct")
        if idx and min(idx) < 0:
            raise IndexOutOfRangeError(f"negative event index {min(idx)}")
        object.__setattr__(self, "indices", tuple(sorted(idx)))

    @classmethod
    def full(cls, n: int) -> Event:
        return cls(tuple(range(n)))

    @classmethod
    def of_labels(cls, dist: FiniteDistribution, labels: Iterable[Label]) -> Event:
        return cls(tuple(dist.index_of(lab) for lab in labels))

    def complement(self, n: int) -> Event:
        self.check_bounds(n)
        inside = set(self.indices)
        return Event(tuple(i for i in range(n) if i not in inside))

    def check_bounds(self, n: int) -> None:
        if self.indices and self.indices[-1] >= n:
            raise IndexOutOfRangeError(
                f"event index {self.indices[-1]} out of range for a space of {n} outcomes"
            )

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices


def new_distribution(labels: Sequence[Label], probs: Sequence[float]) -> FiniteDistribution:
    """Validate ``labels``/``probs`` and return a :class:`FiniteDistribution`."""
    return FiniteDistribution(tuple(labels), probs)


def uniform(n: int) -> FiniteDistribution:
    """Uniform distribution over labels ``0..n-1``."""
    if int(n) != n or n < 1:
        raise ValueError(f"uniform needs a positive integer size, got {n!r}")
    n = int(n)
    return FiniteDistribution(tuple(range(n)), np.full(n, 1.0 / n))


def bernoulli(p: float) -> FiniteDistribution:
    """Labels ``[0, 1]`` with ``P(1) = p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Bernoulli parameter must lie in [0, 1], got {p!r}")
    return FiniteDistribution((0, 1), (1.0 - p, p))


def point_mass(n: int, at: int) -> FiniteDistribution:
    if not 0 <= at < n:
        raise IndexOutOfRangeError(f"point mass index {at} out of range for size {n}")
    probs = np.zeros(n)
    probs[at] = 1.0
    return FiniteDistribution(tuple(range(n)), probs)


def product(components: Sequence[FiniteDistribution]) -> FiniteDistribution:
    """Independent product.  Outcomes are label tuples in lexicographic order
    of the component label orders.  A single component is returned as is.
    """
    components = list(components)
    if not components:
        raise ValueError("product needs at least one component")
    if len(components) == 1:
        return components[0]
    total = math.prod(c.size for c in components)
    if total > MAX_OUTCOMES:
        raise ProductTooLargeError(
            f"product space would have {total} outcomes (cap {MAX_OUTCOMES})"
        )
    probs = components[0].probs
    for c in components[1:]:
        probs = np.multiply.outer(probs, c.probs)
    labels = tuple(itertools.product(*(c.labels for c in components)))
    return FiniteDistribution(labels, probs.reshape(-1))


def product_event(components: Sequence[FiniteDistribution], events: Sequence[Event]) -> Event:
    """The cylinder ``A_1 x ... x A_n`` as an event of ``product(components)``."""
    if len(components) != len(events):
        raise LengthMismatchError("need one event per component")
    if len(components) == 1:
        events[0].check_bounds(components[0].size)
        return events[0]
    shape = tuple(c.size for c in components)
    for ev, n in zip(events, shape):
        ev.check_bounds(n)
    if any(len(ev) == 0 for ev in events):
        return Event()
    grids = np.meshgrid(*(np.asarray(ev.indices) for ev in events), indexing="ij")
    flat = np.ravel_multi_index(tuple(g.reshape(-1) for g in grids), shape)
    return Event(flat)


def _check_event(P: FiniteDistribution, A: Event) -> None:
    if not isinstance(A, Event):
        raise TypeError(f"expected an Event, got {type(A).__name__}")
    A.check_bounds(P.size)


def event_probability(P: FiniteDistribution, A: Event) -> float:
    """``P(A)``, the total mass on the event's indices."""
    _check_event(P, A)
    if not A.indices:
        return 0.0
    if len(A) == P.size:
        return 1.0
    s = math.fsum(P.probs[list(A.indices)])
    return min(max(s, 0.0), 1.0)


def coarsen(P: FiniteDistribution, T: Event) -> FiniteDistribution:
    """Project ``P`` onto the two-cell partition ``{T, T^c}``."""
    pt = event_probability(P, T)
    return FiniteDistribution(("T", "Tc"), (pt, 1.0 - pt))


def _sorted_labels(labels: Iterable[Label]) -> list:
    labels = list(labels)
    try:
        return sorted(labels)
    except TypeError:
        return sorted(labels, key=lambda lab: (type(lab).__name__, repr(lab)))


def merge_spaces(
    P1: FiniteDistribution, P2: FiniteDistribution
) -> tuple[FiniteDistribution, FiniteDistribution]:
    """Extend both distributions to the union of their label sets.

    Outcomes missing from a distribution's original space get mass zero,
    so every event of an original space keeps its probability.
    """
    union = _sorted_labels(set(P1.labels) | set(P2.labels))

    def extend(P):
        lookup = P.as_dict()
        return FiniteDistribution(tuple(union), [lookup.get(lab, 0.0) for lab in union])

    return extend(P1), extend(P2)


def specification_event(f_values: Sequence[float], f0: float, size: int | None = None) -> Event:
    """The superlevel set ``{x : f(x) >= f0}``."""
    f = np.asarray(f_values, dtype=float).reshape(-1)
    if size is not None and f.size != size:
        raise LengthMismatchError(
            f"specification function has {f.size} values for a space of {size} outcomes"
        )
    return Event(np.flatnonzero(f >= f0))


def same_space(P1: FiniteDistribution, P2: FiniteDistribution) -> None:
    """Raise :class:`SpaceMismatchError` unless both share one label list."""
    if P1.labels != P2.labels:
        raise SpaceMismatchError(
            "distributions are over different label lists; merge_spaces() them first"
        )
