"""JSON system documents and exact-number serialization."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .dynamics import CommutingSystem, validate_system
from .errors import ParseError
from .measure import Observable, WeightedSpace


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text, field: str = "value") -> Fraction:
    if isinstance(text, bool):
        raise ParseError(field, f"expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(field, f"expected a rational string, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(field, f"bad rational {text!r}: {exc}") from None


def exact(x: Fraction) -> dict:
    """Exact string plus a decimal annotation."""
    x = Fraction(x)
    return {"exact": format_rational(x), "decimal": f"{float(x):.12g}"}


def _label(p):
    if isinstance(p, list):
        return tuple(_label(q) for q in p)
    return p


def _unlabel(p):
    if isinstance(p, tuple):
        return [_unlabel(q) for q in p]
    return p


def system_from_document(doc: dict) -> CommutingSystem:
    if not isinstance(doc, dict):
        raise ParseError("document", "expected a JSON object")
    for key in ("points", "t1", "t2"):
        if key not in doc:
            raise ParseError(key, "missing field")
    points = doc["points"]
    if isinstance(points, int) and not isinstance(points, bool):
        if points < 1:
            raise ParseError("points", "count must be positive")
        labels = tuple(range(points))
    elif isinstance(points, list) and points:
        labels = tuple(_label(p) for p in points)
    else:
        raise ParseError("points", "expected a positive count or a nonempty label list")
    m = len(labels)
    if "weights" in doc:
        raw = doc["weights"]
        if not isinstance(raw, list) or len(raw) != m:
            raise ParseError("weights", f"expected a list of {m} rationals")
        weights = tuple(parse_rational(w, f"weights[{k}]") for k, w in enumerate(raw))
    else:
        weights = (Fraction(1, m),) * m
    for key in ("t1", "t2"):
        perm = doc[key]
        if not isinstance(perm, list) or len(perm) != m or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in perm
        ):
            raise ParseError(key, f"expected a list of {m} integer indices")
    space = WeightedSpace(labels, weights)
    return validate_system(space, doc["t1"], doc["t2"], str(doc.get("name", "")))


def system_to_document(sys: CommutingSystem) -> dict:
    labels = sys.space.points
    doc = {"name": sys.name}
    doc["points"] = len(labels) if labels == tuple(range(len(labels))) else [_unlabel(p) for p in labels]
    doc["weights"] = [format_rational(w) for w in sys.space.weights]
    doc["t1"] = list(sys.t1.forward)
    doc["t2"] = list(sys.t2.forward)
    return doc


def load_document(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(path), f"cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_system(path) -> CommutingSystem:
    return system_from_document(load_document(path))


def parse_subset(text: str, sys: CommutingSystem) -> list:
    """Comma-separated point indices, or ``all``."""
    text = text.strip()
    if text == "all":
        return list(range(len(sys)))
    try:
        idx = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise ParseError("set", f"expected comma-separated indices, got {text!r}") from None
    if any(not 0 <= i < len(sys) for i in idx):
        raise ParseError("set", "index outside the space")
    return idx


def parse_observable(text: str, sys: CommutingSystem, named: dict | None = None) -> Observable:
    """``const:c``, ``indicator:i,j``, a JSON list of rationals, or a name from the document."""
    text = text.strip()
    if named and text in named:
        return parse_observable(json.dumps(named[text]), sys)
    if text.startswith("const:"):
        return Observable.constant(sys.space, parse_rational(text[6:], "f"))
    if text.startswith("indicator:"):
        return Observable.indicator(sys.space, parse_subset(text[10:], sys))
    try:
        raw = json.loads(text)
    except json.JSONDecodeError:
        raw = [t for t in text.split(",") if t.strip()]
    if not isinstance(raw, list) or len(raw) != len(sys):
        raise ParseError("f", f"expected {len(sys)} values")
    return Observable(sys.space, tuple(parse_rational(v if not isinstance(v, float) else str(v), "f") for v in raw))

