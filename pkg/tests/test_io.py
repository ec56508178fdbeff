import io
import json

import numpy as np
import pytest
from hypothesis import given, settings

from hypernorm import Tensor, WeightedRGraph, gen_random, load_graph, load_tensor, save_graph, save_tensor
from hypernorm.errors import FormatError, VertexOutOfRange
from hypernorm.io import dumps, graph_to_dict, tensor_to_dict

from conftest import tensors


def _roundtrip_tensor(A):
    buf = io.StringIO()
    save_tensor(A, buf)
    buf.seek(0)
    return load_tensor(buf)


@given(tensors(signed=True))
@settings(max_examples=40, deadline=None)
def test_tensor_roundtrip_is_exact(A):
    B = _roundtrip_tensor(A)
    assert B.dims == A.dims
    assert np.array_equal(A.data, B.data)


def test_tensor_document_shape():
    A = Tensor(np.array([[0.0, 1.5], [0.0, 0.0]]))
    d = tensor_to_dict(A)
    assert d == {"format": "rtensor-v1", "order": 2, "dims": [2, 2], "entries": [{"idx": [0, 1], "val": 1.5}]}
    assert json.loads(dumps(d)) == d


def test_graph_roundtrip(tmp_path):
    G = gen_random(3, 6, 0.5, seed=2, weights=True)
    path = tmp_path / "g.json"
    save_graph(G, str(path))
    assert load_graph(str(path)) == G
    assert graph_to_dict(G)["format"] == "rgraph-v1"


def test_graph_loads_as_tensor():
    doc = '{"format": "rgraph-v1", "r": 2, "n": 3, "edges": [{"verts": [0, 2]}]}'
    A = load_tensor(io.StringIO(doc))
    assert A.data[0, 2] == A.data[2, 0] == 1.0 and A.data.sum() == 2.0


def test_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(dumps(tensor_to_dict(Tensor(np.eye(2))))))
    assert np.array_equal(load_tensor("-").data, np.eye(2))


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        "[1, 2]",
        '{"format": "rtensor-v2", "order": 1, "dims": [1], "entries": []}',
        '{"format": "rtensor-v1", "order": 2, "dims": [2, 2]}',
        '{"format": "rtensor-v1", "order": 2, "dims": [2, 2], "entries": [{"idx": [0], "val": 1}]}',
        '{"format": "rgraph-v1", "r": 2, "n": 3, "edges": [{"verts": [2, 0]}]}',
    ],
)
def test_bad_documents(doc):
    with pytest.raises((FormatError, ValueError)):
        load_tensor(io.StringIO(doc))


def test_graph_vertex_out_of_range():
    doc = '{"format": "rgraph-v1", "r": 2, "n": 2, "edges": [{"verts": [0, 5]}]}'
    with pytest.raises(VertexOutOfRange):
        load_graph(io.StringIO(doc))


def test_missing_file():
    with pytest.raises(OSError):
        load_tensor("/nonexistent/x.json")


def test_graph_type_mismatch():
    with pytest.raises(FormatError):
        load_graph(io.StringIO(dumps(tensor_to_dict(Tensor(np.eye(2))))))
    assert WeightedRGraph(2, 2, []).edges == ()
