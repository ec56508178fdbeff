"""JSON formats for tensors (``rtensor-v1``) and weighted r-graphs (``rgraph-v1``).

Tensors are stored as coordinate lists; unlisted entries are zero. Graphs
list their edges with strictly increasing 0-based vertex lists.
"""

from __future__ import annotations

import json
import sys
from typing import IO, Any

import numpy as np

from .errors import FormatError
from .tensor import Tensor, from_coo, to_coo

TENSOR_FORMAT = "rtensor-v1"
GRAPH_FORMAT = "rgraph-v1"


def tensor_to_dict(A: Tensor) -> dict[str, Any]:
    return {
        "format": TENSOR_FORMAT,
        "order": A.order,
        "dims": list(A.dims),
        "entries": [{"idx": list(idx), "val": val} for idx, val in to_coo(A)],
    }


def tensor_from_dict(obj: dict[str, Any]) -> Tensor:
    if not isinstance(obj, dict) or obj.get("format") != TENSOR_FORMAT:
        raise FormatError(f"expected format {TENSOR_FORMAT!r}")
    try:
        order = int(obj["order"])
        dims = [int(d) for d in obj["dims"]]
        coo = [(tuple(int(i) for i in e["idx"]), float(e["val"])) for e in obj["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {TENSOR_FORMAT} document: {exc}") from exc
    return from_coo(order, dims, coo)


def graph_to_dict(G) -> dict[str, Any]:
    return {
        "format": GRAPH_FORMAT,
        "r": G.r,
        "n": G.n,
        "edges": [{"verts": list(e), "weight": w} for e, w in G.edges],
    }


def graph_from_dict(obj: dict[str, Any]):
    from .hypergraph import WeightedRGraph

    if not isinstance(obj, dict) or obj.get("format") != GRAPH_FORMAT:
        raise FormatError(f"expected format {GRAPH_FORMAT!r}")
    try:
        r, n = int(obj["r"]), int(obj["n"])
        edges = []
        for e in obj["edges"]:
            verts = [int(v) for v in e["verts"]]
            if any(b <= a for a, b in zip(verts, verts[1:])):
                raise FormatError(f"edge vertices must be strictly increasing: {verts}")
            edges.append((verts, float(e.get("weight", 1.0))))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {GRAPH_FORMAT} document: {exc}") from exc
    return WeightedRGraph(r, n, edges)


def dumps(obj: dict[str, Any]) -> str:
    # floats use repr, the shortest string that round-trips exactly
    return json.dumps(obj, sort_keys=False)


def _read_text(source: str | IO[str] | None) -> str:
    if source is None or source == "-":
        return sys.stdin.read()
    if hasattr(source, "read"):
        return source.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def load_document(source: str | IO[str] | None) -> dict[str, Any]:
    text = _read_text(source)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    return obj


def load_tensor(source: str | IO[str] | None) -> Tensor:
    """Read a tensor; an ``rgraph-v1`` document loads as its adjacency tensor."""
    obj = load_document(source)
    if obj.get("format") == GRAPH_FORMAT:
        from .hypergraph import adjacency_tensor

        return adjacency_tensor(graph_from_dict(obj))
    return tensor_from_dict(obj)


def load_graph(source: str | IO[str] | None):
    return graph_from_dict(load_document(source))


def _write(text: str, dest: str | IO[str] | None) -> None:
    if dest is None or dest == "-":
        sys.stdout.write(text + "\n")
    elif hasattr(dest, "write"):
        dest.write(text + "\n")
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def save_tensor(A: Tensor, dest: str | IO[str] | None = None) -> None:
    _write(dumps(tensor_to_dict(A)), dest)


def save_graph(G, dest: str | IO[str] | None = None) -> None:
    _write(dumps(graph_to_dict(G)), dest)


def as_array(A: Tensor) -> np.ndarray:
    return np.array(A.data)
