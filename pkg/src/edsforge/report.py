"""Report trees: nested dicts rendered as JSON or as flat ``path: value`` text.

Exact rationals are written as "p/q" strings (or "p" for integers) in both
forms, never as floats.
"""

from __future__ import annotations

import json
from fractions import Fraction

from edsforge.curve import CubicCurve, CurvePoint


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, (CurvePoint, CubicCurve)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "coeffs"):
        return [str(c) for c in obj.coeffs]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def render_json(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"


def parse_json(text: str) -> dict:
    return json.loads(text)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    return str(v)


def _flatten(node, path, out):
    if isinstance(node, dict):
        for k in sorted(node):
            _flatten(node[k], f"{path}.{k}" if path else str(k), out)
    elif isinstance(node, list) and any(isinstance(v, (dict, list)) for v in node):
        for i, v in enumerate(node):
            _flatten(v, f"{path}[{i}]", out)
    elif isinstance(node, list):
        out.append((path, ", ".join(_scalar(v) for v in node)))
    else:
        out.append((path, _scalar(node)))


def render_text(report: dict) -> str:
    """One ``path: value`` line per leaf, keys sorted; booleans as PASS/FAIL."""
    rows = []
    _flatten(to_jsonable(report), "", rows)
    return "".join(f"{path}: {value}\n" for path, value in rows)


def verdicts(report: dict) -> dict:
    """Map from the path of every ``passed`` leaf to its boolean value."""
    rows = []
    _flatten(to_jsonable(report), "", rows)
    return {path: value == "PASS" for path, value in rows
            if path == "passed" or path.endswith(".passed")}


def parse_text_verdicts(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        path, _, value = line.partition(": ")
        if path == "passed" or path.endswith(".passed"):
            if value not in ("PASS", "FAIL"):
                raise ValueError(f"malformed verdict line {line!r}")
            out[path] = value == "PASS"
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")
