"""JSON input files and CSV output.

Schemas
-------
distribution  ``{"labels": [...], "probs": [...]}``; labels are strings or integers
event         ``{"indices": [...]}`` (0-based into the distribution's labels)
              or ``{"labels": [...]}``
graph         ``{"n": int, "edges": [[u, v], ...]}``
family        ``{"kind": "truncated_normal" | "uniform_window",
                 "domain": [lo, hi], "h": float, "grid": [[a, b], ...]}``

Structural problems raise :class:`~conservedinfo.errors.ParseError` with
``field`` set to the offending key.  Value problems (a distribution that
does not sum to one, a graph that is not regular) surface as the
library's validation errors.
"""

from __future__ import annotations

import csv
import json
import math
import numbers
from collections.abc import Iterable, Sequence
from pathlib import Path

from .distributions import Event, FiniteDistribution
from .errors import ParseError
from .extreal import ExtReal
from .finetune import ParamFamily
from .markov import RegularGraph, TrajectoryPoint, build_regular_graph

__all__ = [
    "load_json",
    "parse_distribution",
    "parse_event",
    "parse_graph",
    "parse_family",
    "distribution_to_json",
    "format_value",
    "write_csv",
    "trajectory_rows",
    "TRAJECTORY_HEADER",
]

TRAJECTORY_HEADER = ("t", "q_t", "active_info", "cai_coarsened", "regime")


def load_json(path: str | Path):
    """Read a JSON file.  ``OSError`` propagates; bad JSON is a ParseError."""
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _require(obj, key: str, kind: str):
    if not isinstance(obj, dict):
        raise ParseError(f"expected a JSON object with a {key!r} field", field=key)
    if key not in obj:
        raise ParseError(f"missing field {key!r}", field=key)
    return obj[key]


def _list_of(value, key: str, check, what: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"field {key!r} must be a list", field=key)
    for i, item in enumerate(value):
        if not check(item):
            raise ParseError(f"field {key!r}[{i}] must be {what}, got {item!r}", field=key)
    return value


def _is_number(x) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _is_label(x) -> bool:
    return isinstance(x, str) or _is_int(x)


def parse_distribution(obj) -> FiniteDistribution:
    labels = _list_of(_require(obj, "labels", "list"), "labels", _is_label, "a string or integer")
    probs = _list_of(_require(obj, "probs", "list"), "probs", _is_number, "a number")
    if len(labels) != len(probs):
        raise ParseError(
            f"field 'probs' has {len(probs)} entries but 'labels' has {len(labels)}", field="probs"
        )
    return FiniteDistribution(tuple(labels), [float(p) for p in probs])


def parse_event(obj, dist: FiniteDistribution | None = None) -> Event:
    """Parse an event file.  The ``labels`` form needs ``dist`` to resolve labels."""
    if isinstance(obj, dict) and "labels" in obj and "indices" not in obj:
        labels = _list_of(obj["labels"], "labels", _is_label, "a string or integer")
        if dist is None:
            raise ParseError("label-based events need a distribution to resolve against", field="labels")
        missing = [lab for lab in labels if lab not in dist.labels]
        if missing:
            raise ParseError(f"field 'labels' names unknown outcomes {missing!r}", field="labels")
        return Event.of_labels(dist, labels)
    indices = _list_of(_require(obj, "indices", "list"), "indices", _is_int, "an integer")
    return Event(tuple(indices))


def parse_graph(obj) -> RegularGraph:
    n = _require(obj, "n", "int")
    if not _is_int(n):
        raise ParseError(f"field 'n' must be an integer, got {n!r}", field="n")
    edges = _list_of(
        _require(obj, "edges", "list"),
        "edges",
        lambda e: isinstance(e, list) and len(e) == 2 and all(map(_is_int, e)),
        "a pair of integers",
    )
    return build_regular_graph(n, [tuple(e) for e in edges])


def parse_family(obj) -> ParamFamily:
    kind = _require(obj, "kind", "str")
    if not isinstance(kind, str):
        raise ParseError(f"field 'kind' must be a string, got {kind!r}", field="kind")
    domain = _list_of(_require(obj, "domain", "list"), "domain", _is_number, "a number")
    if len(domain) != 2:
        raise ParseError("field 'domain' must be [lo, hi]", field="domain")
    h = _require(obj, "h", "float")
    if not _is_number(h):
        raise ParseError(f"field 'h' must be a number, got {h!r}", field="h")
    grid = _list_of(
        _require(obj, "grid", "list"),
        "grid",
        lambda xi: isinstance(xi, list) and len(xi) == 2 and all(map(_is_number, xi)),
        "a pair of numbers",
    )
    return ParamFamily(kind, (float(domain[0]), float(domain[1])), float(h), tuple(map(tuple, grid)))


def distribution_to_json(P: FiniteDistribution) -> dict:
    return {"labels": list(P.labels), "probs": P.probs.tolist()}


def format_value(v) -> str:
    """CSV cell text: shortest round-trip repr for floats, names for infinities."""
    if v is None:
        return ""
    if isinstance(v, ExtReal):
        out = v.to_json()
        return out if isinstance(out, str) else repr(out)
    if isinstance(v, float):
        if math.isnan(v):
            return "undefined"
        return repr(v)
    return str(v)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    """Write rows to ``path`` (or a file object).  Returns the row count."""
    def dump(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        count = 0
        for row in rows:
            w.writerow([format_value(v) for v in row])
            count += 1
        return count

    if hasattr(path, "write"):
        return dump(path)
    with open(path, "w", newline="") as fh:
        return dump(fh)


def trajectory_rows(points: Iterable[TrajectoryPoint]):
    for pt in points:
        yield (pt.t, pt.q_t, pt.active_info_t, pt.cai_coarsened_t,
               pt.regime_t.value if pt.regime_t is not None else None)
