"""JSON interchange for transfer matrices and constant matrices.

Entries are {num, den} coefficient lists, ascending by power of z, every
coefficient an exact decimal string "a" or "a/b".  No floating point is
accepted anywhere in the format; round-tripping reproduces the canonical
matrix bit for bit.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .rational import Poly, RatFun
from .transfer import TransferMatrix


class InputFormatError(ValueError):
    """Malformed matrix file or coefficient string."""


_COEFF_RE = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


def _parse_coeff(raw) -> Fraction:
    if isinstance(raw, str):
        if not _COEFF_RE.match(raw.strip()):
            raise InputFormatError(
                f"bad coefficient {raw!r}: expected an exact 'a' or 'a/b' "
                "integer string (no decimals)")
        try:
            return Fraction(raw)
        except ZeroDivisionError as exc:
            raise InputFormatError(f"bad coefficient {raw!r}: {exc}") from exc
    if isinstance(raw, int) and not isinstance(raw, bool):
        return Fraction(raw)
    raise InputFormatError(
        f"coefficients must be integer or 'a/b' strings, got {raw!r}")


def _coeff_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _entry_from_json(obj) -> RatFun:
    if not isinstance(obj, dict) or "num" not in obj or "den" not in obj:
        raise InputFormatError(f"matrix entry must be a num/den object, got {obj!r}")
    num = Poly(_parse_coeff(c) for c in obj["num"])
    den_list = obj["den"]
    if not den_list:
        raise InputFormatError("empty denominator coefficient list")
    den = Poly(_parse_coeff(c) for c in den_list)
    if den.is_zero:
        raise InputFormatError("zero denominator in matrix entry")
    return RatFun(num, den)


def entry_to_json(e: RatFun) -> dict:
    return {
        "num": [_coeff_str(c) for c in e.num.coeffs] or ["0"],
        "den": [_coeff_str(c) for c in e.den.coeffs],
    }


def matrix_to_json(m: TransferMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[entry_to_json(e) for e in row] for row in m.entries],
    }


def matrix_from_json(obj) -> TransferMatrix:
    if not isinstance(obj, dict):
        raise InputFormatError("matrix file must hold a JSON object")
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        grid = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"missing or bad matrix fields: {exc}") from exc
    if len(grid) != rows or any(len(r) != cols for r in grid):
        raise InputFormatError(
            f"entry grid does not match declared shape {rows}x{cols}")
    return TransferMatrix([[_entry_from_json(e) for e in row] for row in grid])


def constant_matrix_from_json(obj):
    """Grid of exact rationals from {rows, cols, entries: [["a", ...], ...]}."""
    if not isinstance(obj, dict):
        raise InputFormatError("constant matrix file must hold a JSON object")
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        grid = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"missing or bad matrix fields: {exc}") from exc
    if len(grid) != rows or any(len(r) != cols for r in grid):
        raise InputFormatError(
            f"entry grid does not match declared shape {rows}x{cols}")
    return tuple(tuple(_parse_coeff(c) for c in row) for row in grid)


def constant_matrix_to_json(a) -> dict:
    return {
        "rows": len(a),
        "cols": len(a[0]) if a else 0,
        "entries": [[_coeff_str(Fraction(c)) for c in row] for row in a],
    }


def load_matrix(path: str) -> TransferMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    return matrix_from_json(obj)


def load_constant_matrix(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc
    return constant_matrix_from_json(obj)


def dump_matrix(m: TransferMatrix, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(m), fh, indent=2, sort_keys=True)
        fh.write("\n")
