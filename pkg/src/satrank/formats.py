"""JSON file formats: patterns, knots, tau tables and certificates."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import SatrankError
from .exact_arith import IntMatrix
from .instanton import RankCertificate, TauOracle
from .seifert_core import Pattern, SeifertForm

PATTERN_FIELDS = {"name", "winding_number", "seifert_matrix", "axis_linking"}
KNOT_FIELDS = {"name", "seifert_matrix"}


class InputError(SatrankError):
    """A file could not be parsed or failed validation."""


def _read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in value):
        raise InputError(f"{what} must be an array of integers")
    return list(value)


def _matrix(value, what: str = "seifert_matrix") -> IntMatrix:
    if not isinstance(value, list):
        raise InputError(f"{what} must be an array of arrays of integers")
    rows = [_int_list(r, f"{what} row {i}") for i, r in enumerate(value)]
    if any(len(r) != len(rows) for r in rows):
        raise InputError(f"{what} must be square")
    return IntMatrix(rows, cols=len(rows))


def _seifert(data: dict, where: str) -> SeifertForm:
    name = data.get("name")
    if not isinstance(name, str):
        raise InputError(f"{where}: 'name' must be a string")
    try:
        return SeifertForm(_matrix(data.get("seifert_matrix")), name)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc
    except SatrankError as exc:
        raise InputError(f"{where}: invalid Seifert matrix: {exc}") from exc


def pattern_from_json(data, where: str = "<pattern>") -> Pattern:
    if not isinstance(data, dict):
        raise InputError(f"{where}: pattern must be a JSON object")
    unknown = set(data) - PATTERN_FIELDS
    if unknown:
        raise InputError(f"{where}: unknown field(s) {sorted(unknown)}")
    for key in ("name", "winding_number", "seifert_matrix"):
        if key not in data:
            raise InputError(f"{where}: missing field {key!r}")
    w = data["winding_number"]
    if isinstance(w, bool) or not isinstance(w, int):
        raise InputError(f"{where}: 'winding_number' must be an integer")
    s = _seifert(data, where)
    if "axis_linking" in data:
        v = _int_list(data["axis_linking"], f"{where}: axis_linking")
    elif w == 0:
        raise InputError(f"{where}: 'axis_linking' is required when winding_number is 0")
    else:
        v = [0] * s.dim
    if len(v) != s.dim:
        raise InputError(f"{where}: axis_linking has length {len(v)}, expected {s.dim}")
    return Pattern(s, w, tuple(v), s.name)


def pattern_to_json(p: Pattern) -> dict:
    return {
        "name": p.name,
        "winding_number": p.winding,
        "seifert_matrix": p.seifert.V.tolist(),
        "axis_linking": list(p.axis_linking),
    }


def load_pattern(path) -> Pattern:
    return pattern_from_json(_read_json(path), str(path))


def knot_from_json(data, where: str = "<knot>") -> SeifertForm:
    if not isinstance(data, dict):
        raise InputError(f"{where}: knot must be a JSON object")
    unknown = set(data) - KNOT_FIELDS
    if unknown:
        raise InputError(f"{where}: unknown field(s) {sorted(unknown)}")
    if "seifert_matrix" not in data:
        raise InputError(f"{where}: missing field 'seifert_matrix'")
    return _seifert(data, where)


def knot_to_json(k: SeifertForm) -> dict:
    return {"name": k.name, "seifert_matrix": k.V.tolist()}


def load_knot(path) -> SeifertForm:
    return knot_from_json(_read_json(path), str(path))


def load_tau(path) -> TauOracle:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: tau table must be a JSON object")
    try:
        return TauOracle.from_json(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_certificate(path) -> RankCertificate:
    data = _read_json(path)
    try:
        return RankCertificate.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: malformed certificate ({exc})") from exc


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
