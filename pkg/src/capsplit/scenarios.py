"""Scenario files: lossless number parsing, schema validation, round-trip dump.

A scenario file is JSON::

    {
      "version": "1",
      "numeric_mode": "exact",
      "tolerance": "1e-12",            # optional, float mode only
      "scenarios": [
        {"allocate": {"x": "10", "caps": ["3", "4", "5"]}},
        {"diff": {"x1": "10", "caps1": [...], "x2": "7", "caps2": [...], "mode": "checked"}},
        {"split": {"a": "0", "b": "10", "lengths": [...]}},
        {"psi_diff": {"x": "0", "y1": "3", "y2": "1", "psi_at_y1": ["3"], "psi_at_y2": ["1"]}}
      ]
    }

Numbers are strings holding a decimal (``"-1.25"``, ``"3e-2"``) or an
integer fraction (``"3/7"``); JSON integers are accepted as well. JSON floats
are refused since they may already have lost precision.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .core import NumericMode

__all__ = [
    "SCHEMA_VERSION",
    "ScenarioError",
    "Scenario",
    "ScenarioFile",
    "parse_number",
    "format_number",
    "loads",
    "dumps",
]

SCHEMA_VERSION = "1"

# scenario kind -> (scalar fields, list fields, optional string fields)
KINDS = {
    "allocate": (("x",), ("caps",), {}),
    "diff": (("x1", "x2"), ("caps1", "caps2"), {"mode": ("checked", "unchecked")}),
    "split": (("a", "b"), ("lengths",), {}),
    "psi_diff": (("x", "y1", "y2"), ("psi_at_y1", "psi_at_y2"), {}),
}


class ScenarioError(ValueError):
    """Malformed scenario input; ``path`` locates the offending element."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _scan_error(text: str, pos: int, what: str):
    return ValueError(f"{what} at character {pos} of {text!r}")


def _digits(text: str, pos: int) -> int:
    end = pos
    while end < len(text) and text[end].isdigit() and text[end].isascii():
        end += 1
    return end


def parse_number(text: str) -> Fraction:
    """Parse a decimal or ``p/q`` string exactly.

    Raises ``ValueError`` naming the first character that cannot continue a
    valid number.

    >>> parse_number("3/7")
    Fraction(3, 7)
    >>> parse_number("-1.25e1")
    Fraction(-25, 2)
    """
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    pos = 0
    if pos < len(text) and text[pos] in "+-":
        pos += 1
    int_end = _digits(text, pos)
    has_int = int_end > pos
    pos = int_end
    if pos < len(text) and text[pos] == "/":
        if not has_int:
            raise _scan_error(text, pos, "numerator missing")
        den_end = _digits(text, pos + 1)
        if den_end == pos + 1:
            raise _scan_error(text, pos + 1, "denominator expected")
        if den_end != len(text):
            raise _scan_error(text, den_end, "unexpected character")
        if int(text[pos + 1:den_end]) == 0:
            raise _scan_error(text, pos + 1, "zero denominator")
        return Fraction(text)
    has_frac = False
    if pos < len(text) and text[pos] == ".":
        frac_end = _digits(text, pos + 1)
        has_frac = frac_end > pos + 1
        pos = frac_end
    if not (has_int or has_frac):
        raise _scan_error(text, pos, "digit expected")
    if pos < len(text) and text[pos] in "eE":
        exp_start = pos + 1
        if exp_start < len(text) and text[exp_start] in "+-":
            exp_start += 1
        exp_end = _digits(text, exp_start)
        if exp_end == exp_start:
            raise _scan_error(text, exp_start, "exponent digits expected")
        pos = exp_end
    if pos != len(text):
        raise _scan_error(text, pos, "unexpected character")
    return Fraction(text)


def format_number(value) -> str:
    """Lossless text for exact values, ``repr`` for floats."""
    if isinstance(value, float):
        return repr(value)
    return str(Fraction(value))


@dataclass
class Scenario:
    kind: str
    values: dict


@dataclass
class ScenarioFile:
    numeric_mode: NumericMode = NumericMode.EXACT
    tolerance: Fraction | None = None
    scenarios: list = field(default_factory=list)
    version: str = SCHEMA_VERSION


def _number(raw: Any, path: str) -> Fraction:
    if isinstance(raw, bool):
        raise ScenarioError(path, "expected a number, got a boolean")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        raise ScenarioError(path, "binary float literal; write the number as a string")
    if not isinstance(raw, str):
        raise ScenarioError(path, f"expected a number string, got {type(raw).__name__}")
    try:
        return parse_number(raw)
    except ValueError as exc:
        raise ScenarioError(path, str(exc)) from None


def _object(raw: Any, path: str, allowed, required) -> dict:
    if not isinstance(raw, dict):
        raise ScenarioError(path, f"expected an object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(allowed))
    if unknown:
        raise ScenarioError(path, f"unknown field(s) {', '.join(unknown)}")
    missing = [k for k in required if k not in raw]
    if missing:
        raise ScenarioError(path, f"missing field(s) {', '.join(missing)}")
    return raw


def _scenario(raw: Any, path: str) -> Scenario:
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ScenarioError(path, f"expected an object with exactly one of {', '.join(KINDS)}")
    (kind, body), = raw.items()
    if kind not in KINDS:
        raise ScenarioError(path, f"unknown scenario kind {kind!r}")
    path = f"{path}.{kind}"
    scalars, lists, options = KINDS[kind]
    body = _object(body, path, (*scalars, *lists, *options), (*scalars, *lists))
    values = {}
    for name in scalars:
        values[name] = _number(body[name], f"{path}.{name}")
    for name in lists:
        items = body[name]
        if not isinstance(items, list):
            raise ScenarioError(f"{path}.{name}", "expected a list")
        values[name] = [_number(v, f"{path}.{name}[{i}]") for i, v in enumerate(items)]
    for name, choices in options.items():
        if name in body:
            if body[name] not in choices:
                raise ScenarioError(f"{path}.{name}", f"expected one of {', '.join(choices)}")
            values[name] = body[name]
    return Scenario(kind, values)


def loads(text: str) -> ScenarioFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    _object(raw, "", ("version", "numeric_mode", "tolerance", "scenarios"), ("version", "scenarios"))
    if raw["version"] != SCHEMA_VERSION:
        raise ScenarioError("version", f"unsupported version {raw['version']!r}, expected {SCHEMA_VERSION!r}")
    try:
        mode = NumericMode(raw.get("numeric_mode", "exact"))
    except ValueError:
        raise ScenarioError("numeric_mode", "expected exact or float") from None
    tolerance = None
    if raw.get("tolerance") is not None:
        if mode is not NumericMode.FLOAT:
            raise ScenarioError("tolerance", "only meaningful with numeric_mode float")
        tolerance = _number(raw["tolerance"], "tolerance")
        if tolerance < 0:
            raise ScenarioError("tolerance", "must be non-negative")
    if not isinstance(raw["scenarios"], list):
        raise ScenarioError("scenarios", "expected a list")
    scenarios = [_scenario(s, f"scenarios[{i}]") for i, s in enumerate(raw["scenarios"])]
    return ScenarioFile(mode, tolerance, scenarios, raw["version"])


def dumps(sf: ScenarioFile) -> str:
    out: dict[str, Any] = {"version": sf.version, "numeric_mode": sf.numeric_mode.value}
    if sf.tolerance is not None:
        out["tolerance"] = format_number(sf.tolerance)
    entries = []
    for s in sf.scenarios:
        body = {}
        for name, value in s.values.items():
            if isinstance(value, list):
                body[name] = [format_number(v) for v in value]
            elif isinstance(value, str):
                body[name] = value
            else:
                body[name] = format_number(value)
        entries.append({s.kind: body})
    out["scenarios"] = entries
    return json.dumps(out, indent=2) + "\n"
