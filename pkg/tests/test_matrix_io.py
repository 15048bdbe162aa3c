import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ktrace.errors import DomainError
from ktrace.matrix_io import MatrixFormatError, matrix_from_json, matrix_to_json, read_matrix, write_matrix
from ktrace.verify.report import MATRIX_SCHEMA

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


def test_parse_example():
    m = matrix_from_json({"n": 2, "entries": [[1, 0], [0, 1], [0, -1], [2.5, 0]]})
    assert np.array_equal(m, np.array([[1, 1j], [-1j, 2.5]]))


@pytest.mark.parametrize(
    "payload",
    [[], {"n": 2}, {"n": 0, "entries": []}, {"n": True, "entries": [[1, 0]]},
     {"n": 2, "entries": [[1, 0]] * 3}, {"n": 1, "entries": [[1, 0, 0]]},
     {"n": 1, "entries": [["1", 0]]}, {"n": 1, "entries": [[float("nan"), 0]]}],
)
def test_rejects_malformed(payload):
    with pytest.raises(MatrixFormatError):
        matrix_from_json(payload)


def test_read_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(MatrixFormatError, match="not valid JSON"):
        read_matrix(p)


def test_writer_rejects_bad_input():
    with pytest.raises(DomainError):
        matrix_to_json(np.ones((2, 3)))
    with pytest.raises(DomainError):
        matrix_to_json(np.array([[np.inf]]))


def test_written_file_matches_schema(tmp_path):
    p = tmp_path / "m.json"
    write_matrix(p, np.array([[1.0, 2j], [-2j, 3.0]]))
    jsonschema.validate(json.loads(p.read_text()), MATRIX_SCHEMA)


@given(st.integers(1, 4), st.data())
def test_round_trip_bit_exact(n, data):
    vals = data.draw(st.lists(finite, min_size=2 * n * n, max_size=2 * n * n))
    a = (np.array(vals[0::2]) + 1j * np.array(vals[1::2])).reshape(n, n)
    b = matrix_from_json(json.loads(matrix_to_json(a)))
    assert a.tobytes() == b.tobytes()
