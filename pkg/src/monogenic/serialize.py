"""Canonical interchange formats.

Series file:    {"n": int, "degree": int, "mode": "exact"|"float",
                 "coeffs": [{"m": [ints], "value": {blade: number|"p/q"}}]}
Operator file:  {"n": int, "entries": [{"m": [ints], "u": <series>}]}
Hom table file: {"n": int, "degree": int, "entries": [{"p": [ints], "b": <series>}]}
Norms file:     {"n": int, "kind": "log_norms", "entries": [{"m": [ints], "ln_norm": num}]}
Scale spec:     {"family": "constant"|"logshift"|"loglog", "rho": num, "a": num}

Blade keys are digit strings with strictly increasing digits ("" is the
scalar part), multi-indices are emitted in lexicographic order, blade keys
sorted, exact rationals as "p/q" strings, floats with 17 significant digits.
Emission is deterministic so canonical files are diffable byte for byte.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .clifford import CliffordNumber
from .errors import SerializationError
from .growth import ProximateOrder
from .multiindex import MultiIndex, mi_abs
from .operators import HomTable, OperatorSymbol
from .series import MonogenicSeries


def blade_to_str(mask: int, n: int) -> str:
    if n > 9:
        raise SerializationError("blade strings support at most 9 units")
    return "".join(str(i + 1) for i in range(n) if mask >> i & 1)


def str_to_blade(text: str, n: int) -> int:
    mask = 0
    prev = 0
    for ch in text:
        if not ch.isdigit():
            raise SerializationError(f"bad blade string {text!r}")
        digit = int(ch)
        if digit <= prev or digit > n:
            raise SerializationError(f"bad blade string {text!r} for dimension {n}")
        mask |= 1 << (digit - 1)
        prev = digit
    return mask


def _encode_value(value, mode: str):
    if mode == "exact":
        return str(Fraction(value))
    return float(value)


def _decode_value(value, mode: str):
    if mode == "exact":
        if isinstance(value, str):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise SerializationError(f"bad rational {value!r}: {exc}") from None
        if isinstance(value, int):
            return Fraction(value)
        raise SerializationError(f"exact mode requires rational strings, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    raise SerializationError(f"float mode requires numbers, got {value!r}")


def clifford_to_obj(c: CliffordNumber, mode: str) -> dict:
    return {
        blade_to_str(mask, c.dim): _encode_value(c.coeffs[mask], mode)
        for mask in sorted(c.coeffs, key=lambda m: (blade_to_str(m, c.dim)))
    }


def obj_to_clifford(obj: dict, n: int, mode: str) -> CliffordNumber:
    if not isinstance(obj, dict):
        raise SerializationError(f"expected a blade map, got {type(obj).__name__}")
    table = {}
    for key, value in obj.items():
        table[str_to_blade(key, n)] = _decode_value(value, mode)
    return CliffordNumber(n, table)


def series_to_obj(f: MonogenicSeries, mode: str | None = None) -> dict:
    mode = mode or f.mode()
    if mode not in ("exact", "float"):
        raise SerializationError(f"unknown mode {mode!r}")
    coeffs = [
        {"m": list(m), "value": clifford_to_obj(f.coeffs[m], mode)}
        for m in sorted(f.coeffs, key=lambda m: (mi_abs(m), m))
    ]
    return {"n": f.n, "degree": f.degree, "mode": mode, "coeffs": coeffs}


def obj_to_series(obj: dict) -> MonogenicSeries:
    try:
        n = int(obj["n"])
        degree = int(obj["degree"])
        mode = str(obj["mode"])
        raw = obj["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed series object: {exc}") from None
    if mode not in ("exact", "float"):
        raise SerializationError(f"unknown mode {mode!r}")
    coeffs = {}
    for item in raw:
        try:
            m = tuple(int(v) for v in item["m"])
            value = item["value"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SerializationError(f"malformed coefficient entry: {exc}") from None
        coeffs[m] = obj_to_clifford(value, n, mode)
    try:
        return MonogenicSeries(n, degree, coeffs)
    except ValueError as exc:
        raise SerializationError(str(exc)) from None


def operator_to_obj(P: OperatorSymbol, mode: str | None = None) -> dict:
    if mode is None:
        mode = "exact" if all(u.is_exact() for u in P.entries.values()) else "float"
    entries = [
        {"m": list(m), "u": series_to_obj(P.entries[m], mode)}
        for m in sorted(P.entries, key=lambda m: (mi_abs(m), m))
    ]
    return {"n": P.n, "entries": entries}


def obj_to_operator(obj: dict) -> OperatorSymbol:
    try:
        n = int(obj["n"])
        raw = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed operator object: {exc}") from None
    entries = {}
    for item in raw:
        m = tuple(int(v) for v in item["m"])
        entries[m] = obj_to_series(item["u"])
    return OperatorSymbol(n, entries)


def homtable_to_obj(H: HomTable, mode: str | None = None) -> dict:
    if mode is None:
        mode = "exact" if all(b.is_exact() for b in H.entries.values()) else "float"
    entries = [
        {"p": list(p), "b": series_to_obj(H.entries[p], mode)}
        for p in sorted(H.entries, key=lambda p: (mi_abs(p), p))
    ]
    return {"n": H.n, "degree": H.degree, "entries": entries}


def obj_to_homtable(obj: dict) -> HomTable:
    try:
        n = int(obj["n"])
        degree = int(obj["degree"])
        raw = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed hom table object: {exc}") from None
    entries = {}
    for item in raw:
        p = tuple(int(v) for v in item["p"])
        entries[p] = obj_to_series(item["b"])
    return HomTable(n=n, degree=degree, entries=entries)


def log_norms_to_obj(n: int, log_norms: dict[MultiIndex, float]) -> dict:
    entries = [
        {"m": list(m), "ln_norm": float(log_norms[m])}
        for m in sorted(log_norms, key=lambda m: (mi_abs(m), m))
    ]
    return {"n": n, "kind": "log_norms", "entries": entries}


def obj_to_log_norms(obj: dict) -> tuple[int, dict[MultiIndex, float]]:
    try:
        n = int(obj["n"])
        raw = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed norms object: {exc}") from None
    out = {}
    for item in raw:
        m = tuple(int(v) for v in item["m"])
        out[m] = float(item["ln_norm"])
    return n, out


# ---------------------------------------------------------------------------
# Canonical JSON emission (fixed float formatting, stable ordering)
# ---------------------------------------------------------------------------


def _emit(value: Any, out: list[str]) -> None:
    if isinstance(value, dict):
        out.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _emit(item, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, bool) or value is None:
        out.append(json.dumps(value))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise SerializationError(f"cannot serialize non-finite float {value}")
        out.append(format(value, ".17g"))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    else:
        raise SerializationError(f"cannot serialize {type(value).__name__}")


def canonical_dumps(obj: Any) -> str:
    out: list[str] = []
    _emit(obj, out)
    out.append("\n")
    return "".join(out)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None


def write_file(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(obj))


def read_file(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def scale_to_obj(po: ProximateOrder) -> dict:
    return po.to_dict()


def obj_to_scale(obj: dict) -> ProximateOrder:
    try:
        return ProximateOrder.from_dict(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"malformed proximate-order object: {exc}") from None
