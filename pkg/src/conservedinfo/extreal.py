"""Extended reals and logarithm bases.

``ExtReal`` is a ``float`` subclass.  IEEE arithmetic already gives the
semantics we want on the extended line: ``inf + 1 == inf``,
``inf + -inf`` is NaN, and NaN absorbs everything.  NaN is therefore the
"undefined" value; the subclass just adds names for the four cases and a
portable string form for serialization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ExtReal", "LogBase", "POS_INF", "NEG_INF", "UNDEFINED", "BITS", "NATS"]


class ExtReal(float):
    """A value in R u {+inf, -inf}, or undefined (NaN)."""

    __slots__ = ()

    def _wrap(op):
        def method(self, other):
            res = getattr(float, op)(self, other)
            return NotImplemented if res is NotImplemented else ExtReal(res)

        method.__name__ = op
        return method

    __add__ = _wrap("__add__")
    __radd__ = _wrap("__radd__")
    __sub__ = _wrap("__sub__")
    __rsub__ = _wrap("__rsub__")
    __mul__ = _wrap("__mul__")
    __rmul__ = _wrap("__rmul__")
    __truediv__ = _wrap("__truediv__")
    del _wrap

    def __neg__(self) -> ExtReal:
        return ExtReal(-float(self))

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self)

    @property
    def is_pos_inf(self) -> bool:
        return self == math.inf

    @property
    def is_neg_inf(self) -> bool:
        return self == -math.inf

    @property
    def is_undefined(self) -> bool:
        return math.isnan(self)

    def sign(self) -> int:
        """-1, 0 or 1.  Raises on undefined values, which have no sign."""
        if self.is_undefined:
            raise ValueError("undefined value has no sign")
        return (self > 0) - (self < 0)

    def to_json(self) -> float | str:
        """Finite values as floats, the rest as ``"+inf"``, ``"-inf"``, ``"undefined"``."""
        if self.is_undefined:
            return "undefined"
        if self.is_pos_inf:
            return "+inf"
        if self.is_neg_inf:
            return "-inf"
        return float(self)

    @classmethod
    def parse(cls, value: float | str) -> ExtReal:
        """Inverse of :meth:`to_json`."""
        if isinstance(value, str):
            key = value.strip().lower()
            if key == "undefined":
                return UNDEFINED
            if key in ("+inf", "inf"):
                return POS_INF
            if key == "-inf":
                return NEG_INF
        return cls(float(value))

    def __str__(self) -> str:
        out = self.to_json()
        return out if isinstance(out, str) else repr(out)

    def __repr__(self) -> str:
        return f"ExtReal({self})"


POS_INF = ExtReal(math.inf)
NEG_INF = ExtReal(-math.inf)
UNDEFINED = ExtReal(math.nan)


@dataclass(frozen=True)
class LogBase:
    """Base used when reporting log-based measures.  Internals work in nats."""

    base: float = 2.0

    def __post_init__(self):
        if not (math.isfinite(self.base) and self.base > 1):
            raise ValueError(f"log base must be a finite real > 1, got {self.base!r}")

    @property
    def ln(self) -> float:
        return math.log(self.base)

    def from_nats(self, x: float) -> ExtReal:
        return ExtReal(x / self.ln)

    @classmethod
    def parse(cls, text: str | float) -> LogBase:
        """Accepts ``"2"``, ``"e"``, ``"10"`` or any number > 1."""
        if isinstance(text, str) and text.strip().lower() == "e":
            return cls(math.e)
        try:
            return cls(float(text))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"invalid log base {text!r}") from exc

    def __str__(self) -> str:
        if self.base == math.e:
            return "e"
        return f"{self.base:g}"


BITS = LogBase(2.0)
NATS = LogBase(math.e)
