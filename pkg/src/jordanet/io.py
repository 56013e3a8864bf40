"""JSON input/output for subspaces and parametric families.

Plain space files look like::

    {"n": 4, "basis": [[[1, 0, ...], ...], ...]}

with entries given as integers or rational strings "p/q"; matrices are full
n x n arrays and must be symmetric.  Parametric families add
``"parametric": true`` and allow entries to be polynomial strings in the
parameter ``t`` (or the variable named by ``"param"``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .errors import InputError
from .exact import MPoly, frac, frac_str, parse_poly
from .linalg import Mat
from .spaces import MatSpace, ParametricBasis, make_space


def _entry_to_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError("PARSE_ERROR", "boolean is not a matrix entry")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return frac(value)
    raise InputError("PARSE_ERROR", f"bad matrix entry {value!r}")


def _entry_to_poly(value, param: str) -> MPoly:
    if isinstance(value, int):
        return MPoly.const(value, (param,))
    if isinstance(value, str):
        poly = parse_poly(value)
        extra = set(poly.support_vars()) - {param}
        if extra:
            raise InputError("PARSE_ERROR", f"family entries may only use {param!r}, got {sorted(extra)}")
        return poly
    raise InputError("PARSE_ERROR", f"bad family entry {value!r}")


def parse_space_data(obj: dict) -> Union[MatSpace, ParametricBasis]:
    if not isinstance(obj, dict):
        raise InputError("PARSE_ERROR", "space file must hold a JSON object")
    try:
        n = int(obj["n"])
        basis_data = obj["basis"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("PARSE_ERROR", "space object needs integer 'n' and a 'basis' list") from exc
    if not isinstance(basis_data, list) or not basis_data:
        raise InputError("PARSE_ERROR", "'basis' must be a nonempty list of n x n matrices")
    parametric = bool(obj.get("parametric", False))
    param = obj.get("param", "t")
    mats = []
    for raw in basis_data:
        if not isinstance(raw, list) or len(raw) != n or any(len(r) != n for r in raw):
            raise InputError("PARSE_ERROR", "each basis matrix must be a full n x n array")
        if parametric:
            mats.append(Mat([[_entry_to_poly(e, param) for e in row] for row in raw]))
        else:
            mats.append(Mat([[_entry_to_fraction(e) for e in row] for row in raw]))
    if parametric:
        return ParametricBasis(n, mats, param)
    return make_space(n, mats)


def load_space_file(path: Union[str, Path]) -> Union[MatSpace, ParametricBasis]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError("PARSE_ERROR", f"cannot read {path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("PARSE_ERROR", f"bad JSON in {path}: {exc}") from exc
    return parse_space_data(obj)


def space_to_json(space: MatSpace) -> dict:
    def render(value: Fraction):
        return int(value) if value.denominator == 1 else frac_str(value)

    return {
        "n": space.n,
        "basis": [[[render(b[i, j]) for j in range(space.n)] for i in range(space.n)]
                  for b in space.basis],
    }
