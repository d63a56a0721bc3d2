import json

import numpy as np
import pytest

from genshift import jsonio
from genshift.derivcheck import is_derivation
from genshift.errors import ParseError, SemanticError
from genshift.seqalg import vec
from genshift.shiftop import IndexMap, LinOp, identity_op, sigma_op
from genshift.structure import classify_psi_lambda, twisted_derivation_space


def test_vector_round_trip():
    x = vec([1, -2.5j, 3 + 4j])
    data = jsonio.vector_to_json(x)
    assert data == [[1.0, 0.0], [0.0, -2.5], [3.0, 4.0]]
    assert jsonio.vector_from_json(data) == x


def test_complex_scalar_shorthand():
    assert jsonio.complex_from_json(2) == 2 + 0j
    assert jsonio.complex_from_json([1, -1]) == 1 - 1j
    with pytest.raises(ParseError):
        jsonio.complex_from_json([1])
    with pytest.raises(ParseError):
        jsonio.complex_from_json("2")
    with pytest.raises(ParseError):
        jsonio.complex_from_json(True)


def test_index_map_round_trip():
    phi = IndexMap(4, (1, 2, 3, 0))
    data = jsonio.index_map_to_json(phi)
    assert data == {"n": 4, "map": [1, 2, 3, 0]}
    assert jsonio.index_map_from_json(data) == phi
    assert jsonio.index_map_from_json(json.loads(json.dumps(data))) == phi


def test_index_map_schema_errors():
    with pytest.raises(ParseError):
        jsonio.index_map_from_json([0, 1])
    with pytest.raises(ParseError):
        jsonio.index_map_from_json({"n": 2})
    with pytest.raises(ParseError):
        jsonio.index_map_from_json({"n": "2", "map": [0, 1]})
    with pytest.raises(ParseError):
        jsonio.index_map_from_json({"n": 2, "map": [0, 0.5]})
    # parses but violates the range invariant
    with pytest.raises(SemanticError):
        jsonio.index_map_from_json({"n": 2, "map": [0, 5]})


def test_linop_round_trips():
    shift = sigma_op(IndexMap(3, (1, 2, 0)))
    data = jsonio.linop_to_json(shift)
    assert data["phi"] == [1, 2, 0]
    back = jsonio.linop_from_json(data)
    assert not back.is_dense
    assert np.array_equal(back.as_matrix(), shift.as_matrix())

    dense = identity_op(2)
    back = jsonio.linop_from_json(jsonio.linop_to_json(dense))
    assert back.is_dense
    assert np.array_equal(back.as_matrix(), dense.as_matrix())


def test_linop_accepts_scalar_entries():
    op = jsonio.linop_from_json({"n": 2, "r": [1, 1], "phi": [1, 0]})
    assert np.array_equal(op.as_matrix(), np.array([[0, 1], [1, 0]], dtype=complex))


def test_linop_schema_errors():
    with pytest.raises(ParseError):
        jsonio.linop_from_json({"n": 2})
    with pytest.raises(ParseError):
        jsonio.linop_from_json({"n": 2, "dense": [[0, 0]]})
    with pytest.raises(ParseError):
        jsonio.linop_from_json({"n": 2, "r": [[1, 0], [1, 0]], "phi": "id"})


def test_check_result_serialization():
    holding = jsonio.check_result_to_json(is_derivation(LinOp.from_matrix(np.zeros((2, 2)))))
    assert holding == {"holds": True}

    failing = jsonio.check_result_to_json(is_derivation(identity_op(2)))
    assert failing["holds"] is False
    witness = failing["witness"]
    assert witness["inputs"] == [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]
    assert witness["lhs"] == [[1.0, 0.0], [0.0, 0.0]]
    assert witness["rhs"] == [[2.0, 0.0], [0.0, 0.0]]
    assert witness["deviation"] == pytest.approx(1.0)


def test_classification_serialization():
    phi = IndexMap(2, (1, 0))
    accepted = jsonio.classification_to_json(
        classify_psi_lambda(phi, sigma_op(phi), LinOp.from_matrix(np.zeros((2, 2))))
    )
    assert accepted["accepted"] is True
    assert accepted["r"] == [[1.0, 0.0], [1.0, 0.0]]

    rejected = jsonio.classification_to_json(classify_psi_lambda(phi, identity_op(2), identity_op(2)))
    assert rejected["accepted"] is False
    assert rejected["witness"]["operator"] == "psi"
    assert rejected["witness"]["entry"] == [0, 0]


def test_solve_report_serialization():
    shift = sigma_op(IndexMap(2, (0, 0)))
    report = jsonio.solve_report_to_json(twisted_derivation_space(shift, shift))
    assert report["dimension"] == 0
    assert report["basis"] == []
    assert report["residual"] == 0.0


def test_p_list_parsing():
    ps = jsonio.p_list_from_json([1, 2.5, "inf"])
    assert [p.to_json() for p in ps] == [1.0, 2.5, "inf"]
    with pytest.raises(ParseError):
        jsonio.p_list_from_json([])
    with pytest.raises(ParseError):
        jsonio.p_list_from_json(["soon"])


def test_load_json_file_errors(tmp_path):
    missing = tmp_path / "missing.json"
    with pytest.raises(ParseError):
        jsonio.load_json_file(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        jsonio.load_json_file(str(bad))
