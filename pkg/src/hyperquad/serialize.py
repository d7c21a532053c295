"""Graph export: graph6, plain edge lists and JSON."""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .relations import RelationGraph

_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


def adjacency_matrix(adjacency: Sequence[int]) -> np.ndarray:
    v = len(adjacency)
    nbytes = (v + 7) // 8
    raw = np.frombuffer(
        b"".join(row.to_bytes(nbytes, "little") for row in adjacency), dtype=np.uint8
    ).reshape(v, nbytes)
    return np.unpackbits(raw, axis=1, count=v, bitorder="little").astype(bool)


def _size_prefix(v: int) -> bytes:
    if v < 0:
        raise ValueError("negative vertex count")
    if v <= 62:
        return bytes([v + 63])
    if v <= 258047:
        return bytes([126] + [((v >> s) & 63) + 63 for s in (12, 6, 0)])
    if v < 1 << 36:
        return bytes([126, 126] + [((v >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"graph6 cannot encode {v} vertices")


def encode_graph6(adjacency: Sequence[int]) -> str:
    """graph6 string (no header, no newline) for a symmetric bitset adjacency."""
    v = len(adjacency)
    mat = adjacency_matrix(adjacency)
    # lower-triangle (j, i) with i < j in row-major order is the column order (0,1),(0,2),(1,2),...
    j, i = np.tril_indices(v, -1)
    bits = mat[i, j].astype(np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    body = (bits.reshape(-1, 6) @ _WEIGHTS.astype(np.int64) + 63).astype(np.uint8)
    return (_size_prefix(v) + body.tobytes()).decode("ascii")


def decode_graph6(text: str) -> tuple[int, ...]:
    """Inverse of :func:`encode_graph6`; returns bitset adjacency rows."""
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    raw = data.encode("ascii")
    if not raw or any(c < 63 or c > 126 for c in raw):
        raise ValueError("graph6 data must be non-empty printable characters 63..126")
    vals = [c - 63 for c in raw]
    if vals[0] != 63:
        v, pos = vals[0], 1
    elif len(vals) > 1 and vals[1] != 63:
        if len(vals) < 4:
            raise ValueError("truncated graph6 size field")
        v = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise ValueError("truncated graph6 size field")
        v = 0
        for x in vals[2:8]:
            v = (v << 6) | x
        pos = 8
    nbits = v * (v - 1) // 2
    need = (nbits + 5) // 6
    if len(vals) - pos != need:
        raise ValueError(f"graph6 body has {len(vals) - pos} bytes, expected {need} for {v} vertices")
    body = np.array(vals[pos:], dtype=np.uint8)
    bits = ((body[:, None] >> np.arange(5, -1, -1, dtype=np.uint8)) & 1).reshape(-1)
    if bits[nbits:].any():
        raise ValueError("nonzero graph6 padding bits")
    mat = np.zeros((v, v), dtype=bool)
    j, i = np.tril_indices(v, -1)
    mat[i, j] = bits[:nbits].astype(bool)
    mat |= mat.T
    packed = np.packbits(mat, axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def edges_text(graph: RelationGraph) -> str:
    return "".join(f"{u} {w}\n" for u, w in graph.edges())


def json_text(graph: RelationGraph) -> str:
    doc = {
        "n": graph.n,
        "relation": str(graph.label),
        "vertex_count": graph.v,
        "edge_count": graph.edge_count,
        "vertices": graph.vertex_names(),
        "edges": [list(e) for e in graph.edges()],
    }
    return json.dumps(doc) + "\n"


def export(graph: RelationGraph, fmt: str) -> str:
    if fmt == "graph6":
        return encode_graph6(graph.adjacency) + "\n"
    if fmt == "edges":
        return edges_text(graph)
    if fmt == "json":
        return json_text(graph)
    raise ValueError(f"unknown graph format {fmt!r}")
