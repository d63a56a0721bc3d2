"""JSON wire formats for every value the CLI reads or writes.

Complex scalars travel as two-element ``[re, im]`` arrays, vectors as
arrays of those pairs, and the norm exponent as a number or the string
``"inf"``.  Index maps are ``{"n": 4, "map": [1, 2, 3, 0]}``; operators
are ``{"n": ..., "dense": [[[re, im], ...], ...]}`` or
``{"n": ..., "r": [[re, im], ...], "phi": [...]}``.

Schema problems raise ``ParseError``; values that parse but violate a
domain invariant surface as ``SemanticError`` from the constructors.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .derivcheck import CheckResult, Witness
from .errors import ParseError
from .seqalg import PExponent, SeqVector
from .shiftop import IndexMap, LinOp
from .structure import Classification, EntryWitness, SolveReport

__all__ = [
    "load_json_file",
    "complex_to_json",
    "complex_from_json",
    "vector_to_json",
    "vector_from_json",
    "index_map_to_json",
    "index_map_from_json",
    "linop_to_json",
    "linop_from_json",
    "p_list_from_json",
    "check_result_to_json",
    "classification_to_json",
    "solve_report_to_json",
]


def load_json_file(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _require_number(value, context: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{context}: expected a number, got {value!r}")
    return float(value)


def complex_to_json(value: complex) -> list[float]:
    value = complex(value)
    # +0.0 normalizes the negative zeros elimination can produce
    return [value.real + 0.0, value.imag + 0.0]


def complex_from_json(data, context: str = "complex value") -> complex:
    """Accepts an [re, im] pair or a bare real number."""
    if isinstance(data, (int, float)) and not isinstance(data, bool):
        return complex(float(data), 0.0)
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise ParseError(f"{context}: expected an [re, im] pair or a number, got {data!r}")
    return complex(_require_number(data[0], context), _require_number(data[1], context))


def vector_to_json(x: SeqVector) -> list[list[float]]:
    return [complex_to_json(v) for v in x]


def vector_from_json(data, context: str = "vector") -> SeqVector:
    if not isinstance(data, list) or not data:
        raise ParseError(f"{context}: expected a nonempty array of [re, im] pairs, got {data!r}")
    values = [complex_from_json(item, context) for item in data]
    return SeqVector(np.asarray(values, dtype=np.complex128))


def index_map_to_json(phi: IndexMap) -> dict:
    return {"n": phi.n, "map": list(phi.image)}


def index_map_from_json(data) -> IndexMap:
    if not isinstance(data, dict):
        raise ParseError(f"index map: expected an object, got {data!r}")
    if "n" not in data or "map" not in data:
        raise ParseError("index map: object needs 'n' and 'map' fields")
    n = data["n"]
    image = data["map"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"index map: 'n' must be an integer, got {n!r}")
    if not isinstance(image, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in image):
        raise ParseError(f"index map: 'map' must be an array of integers, got {image!r}")
    return IndexMap(n, tuple(image))


def linop_to_json(op: LinOp) -> dict:
    if op.is_dense:
        return {
            "n": op.n,
            "dense": [[complex_to_json(v) for v in row] for row in op.dense],
        }
    return {"n": op.n, "r": vector_to_json(op.r), "phi": list(op.phi.image)}


def linop_from_json(data) -> LinOp:
    if not isinstance(data, dict) or "n" not in data:
        raise ParseError(f"operator: expected an object with an 'n' field, got {data!r}")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"operator: 'n' must be an integer, got {n!r}")
    if "dense" in data:
        rows = data["dense"]
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"operator: 'dense' must be an array of {n} rows")
        matrix = []
        for row in rows:
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(f"operator: each dense row must hold {n} [re, im] pairs")
            matrix.append([complex_from_json(v, "operator entry") for v in row])
        return LinOp.from_matrix(np.asarray(matrix, dtype=np.complex128))
    if "r" in data and "phi" in data:
        r = vector_from_json(data["r"], "operator multiplier")
        phi_image = data["phi"]
        if not isinstance(phi_image, list):
            raise ParseError(f"operator: 'phi' must be an array of integers, got {phi_image!r}")
        phi = index_map_from_json({"n": n, "map": phi_image})
        return LinOp.multiplier_shift(r, phi)
    raise ParseError("operator: object needs either a 'dense' field or both 'r' and 'phi'")


def p_list_from_json(data) -> list[PExponent]:
    if not isinstance(data, list) or not data:
        raise ParseError(f"expected a nonempty array of norm exponents, got {data!r}")
    return [PExponent.parse(item) for item in data]


def _witness_to_json(witness: Witness) -> dict:
    out = {
        "inputs": [vector_to_json(v) for v in witness.inputs],
        "lhs": vector_to_json(witness.lhs),
        "rhs": vector_to_json(witness.rhs),
        "deviation": witness.deviation,
    }
    if witness.detail:
        out["detail"] = witness.detail
    return out


def check_result_to_json(result: CheckResult) -> dict:
    out: dict = {"holds": result.holds}
    if result.witness is not None:
        out["witness"] = _witness_to_json(result.witness)
    return out


def _entry_witness_to_json(witness: EntryWitness) -> dict:
    return {
        "operator": witness.operator,
        "entry": [witness.row, witness.col],
        "expected": complex_to_json(witness.expected),
        "actual": complex_to_json(witness.actual),
        "deviation": witness.deviation,
    }


def classification_to_json(result: Classification) -> dict:
    out: dict = {"accepted": result.accepted}
    if result.r is not None:
        out["r"] = vector_to_json(result.r)
    if result.witness is not None:
        out["witness"] = _entry_witness_to_json(result.witness)
    return out


def solve_report_to_json(report: SolveReport) -> dict:
    out: dict = {}
    if report.dimension is not None:
        out["dimension"] = report.dimension
    if report.feasible is not None:
        out["feasible"] = report.feasible
    out["basis"] = [linop_to_json(op) for op in report.basis]
    if report.solution is not None:
        out["solution"] = linop_to_json(report.solution)
    out["residual"] = report.residual
    return out
