"""On-disk formats for states and measured expectation values.

Both formats are JSON with complex numbers as [re, im] pairs and entries in
row-major order.  Floats serialize through repr, so a write/read round trip
reproduces every value bit-for-bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .matcore import DensityMatrix


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _complex_entry(raw, where: str) -> complex:
    if (not isinstance(raw, (list, tuple)) or len(raw) != 2
            or not all(isinstance(x, (int, float)) for x in raw)):
        raise ParseError(f"{where}: entries must be [re, im] number pairs, got {raw!r}")
    return complex(raw[0], raw[1])


def load_state(path: str) -> DensityMatrix:
    """Parse a state file into a DensityMatrix.

    Schema: {"dim": D, "split": [D_A, D_B] (optional), "entries": [[re, im] x D^2]}.
    Parse problems raise ParseError with the offending field; physical
    invariant violations surface as the corresponding matcore errors.
    """
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    if "dim" not in data or not isinstance(data["dim"], int) or data["dim"] < 1:
        raise ParseError(f"{path}: field 'dim' must be a positive integer")
    dim = data["dim"]
    split = data.get("split")
    if split is not None:
        if (not isinstance(split, list) or len(split) != 2
                or not all(isinstance(x, int) and x > 0 for x in split)):
            raise ParseError(f"{path}: field 'split' must be [D_A, D_B]")
        split = (split[0], split[1])
    entries = data.get("entries")
    if not isinstance(entries, list) or len(entries) != dim * dim:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise ParseError(f"{path}: field 'entries' must hold {dim * dim} pairs, got {got}")
    flat = [_complex_entry(e, f"{path}: entries[{i}]") for i, e in enumerate(entries)]
    matrix = np.array(flat, dtype=complex).reshape(dim, dim)
    return DensityMatrix(matrix, split=split)


def save_state(rho: DensityMatrix, path: str):
    entries = [[z.real, z.imag] for z in rho.matrix.reshape(-1)]
    data = {"dim": rho.dim, "entries": entries}
    if rho.split is not None:
        data["split"] = list(rho.split)
    with open(path, "w") as fh:
        json.dump(data, fh)
        fh.write("\n")


@dataclass(frozen=True)
class ExpectationData:
    """Measured expectation values keyed by operator label.

    dephased maps labels to <S_l> of the decohered state when supplied
    explicitly; with projectors_included the values list carries labels
    "P0".."P{D-1}" whose diagonal statistics derive the dephased vector.
    """

    basis_tag: str
    values: dict
    dephased: dict | None
    projectors_included: bool


def _label_value_pairs(raw, where: str) -> dict:
    if not isinstance(raw, list):
        raise ParseError(f"{where}: must be a list of [label, value] pairs")
    out = {}
    for i, pair in enumerate(raw):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not isinstance(pair[0], str)
                or not isinstance(pair[1], (int, float))):
            raise ParseError(f"{where}[{i}]: expected [label, value], got {pair!r}")
        if pair[0] in out:
            raise ParseError(f"{where}[{i}]: duplicate label {pair[0]!r}")
        out[pair[0]] = float(pair[1])
    return out


def load_expectations(path: str) -> ExpectationData:
    """Parse an expectation file.

    Schema: {"basis": tag, "expectations": [[label, value], ...]} plus either
    "dephased_expectations" (same shape) or "diagonal_projectors_included":
    true, in which case labels "P0".."P{D-1}" among the expectations provide
    the diagonal statistics of the state.
    """
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    tag = data.get("basis")
    if not isinstance(tag, str):
        raise ParseError(f"{path}: field 'basis' must be a basis tag string")
    values = _label_value_pairs(data.get("expectations"), f"{path}: expectations")
    dephased = None
    if "dephased_expectations" in data:
        dephased = _label_value_pairs(
            data["dephased_expectations"], f"{path}: dephased_expectations"
        )
    flag = data.get("diagonal_projectors_included", False)
    if dephased is None and not flag:
        raise ParseError(
            f"{path}: provide 'dephased_expectations' or set "
            "'diagonal_projectors_included': true"
        )
    return ExpectationData(basis_tag=tag, values=values, dephased=dephased,
                           projectors_included=bool(flag))
