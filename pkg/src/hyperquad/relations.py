"""Pair relations on antiflags (A) and nonsingular points (B, C), and their graphs.

Pair classification is done once per family into a label matrix (one int8 per
ordered pair, 0 on the diagonal); graphs, degree tables and the correspondence
check are read off those matrices.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .correspondence import (
    Antiflag,
    Frame,
    _crossing_line,
    antiflags,
    forward,
    nonsingular_points,
)
from .gf2 import Subspace, contains, parity, render
from .quadric import LINE_TYPES, ConsistencyError

EXHAUSTIVE_VERTEX_LIMIT = 20_000
FAMILY_SIZE = {"A": 4, "B": 2, "C": 4}
# pair count above which rows are farmed out to worker processes
PARALLEL_PAIR_THRESHOLD = 2_000_000


class ResourceBoundError(ValueError):
    pass


class NotStronglyRegular(ValueError):
    def __init__(self, reason: str, witness: tuple[int, ...] = ()):
        super().__init__(reason + (f" (witness {witness})" if witness else ""))
        self.witness = witness


@dataclass(frozen=True)
class RelationLabel:
    family: str
    index: int

    def __post_init__(self):
        if self.family == "=":
            if self.index != 0:
                raise ValueError("EQUAL carries index 0")
        elif self.family not in FAMILY_SIZE:
            raise ValueError(f"unknown relation family {self.family!r}")
        elif not 1 <= self.index <= FAMILY_SIZE[self.family]:
            raise ValueError(f"{self.family}{self.index} is out of range")

    def __str__(self) -> str:
        return "EQUAL" if self.family == "=" else f"{self.family}{self.index}"

    @classmethod
    def parse(cls, text: str) -> RelationLabel:
        text = text.strip().upper()
        if text == "EQUAL":
            return EQUAL
        if len(text) != 2 or not text[1].isdigit():
            raise ValueError(f"cannot parse relation label {text!r}")
        return cls(text[0], int(text[1]))


EQUAL = RelationLabel("=", 0)


def _worker_count() -> int:
    env = os.environ.get("HYPERQUAD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"HYPERQUAD_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# pair classifiers

def _a_index(p1: int, h1: Subspace, p2: int, h2: Subspace) -> int:
    same_p, same_h = p1 == p2, h1 == h2
    if same_p and same_h:
        return 0
    if same_p or same_h:
        return 3
    a = contains(h2, p1)
    b = contains(h1, p2)
    if a and b:
        return 2
    if a or b:
        return 1
    return 4


def classify_antiflag_pair(af1: Antiflag, af2: Antiflag) -> RelationLabel:
    if af1.p.m != af2.p.m or af1.h.m != af2.h.m or af1.p.m != af1.h.m:
        raise ValueError("antiflags live in different ambient spaces")
    k = _a_index(af1.p.vector, af1.h, af2.p.vector, af2.h)
    return EQUAL if k == 0 else RelationLabel("A", k)


def _pair_vectors(frame: Frame, x: Subspace, x2: Subspace) -> tuple[int, int]:
    out = []
    for pt in (x, x2):
        if pt.m != frame.m or pt.dim != 1:
            raise ValueError(f"expected a point of V({frame.m},2), got {pt}")
        if not frame.qs.q(pt.basis[0]):
            raise ValueError(f"{pt} is singular")
        out.append(pt.basis[0])
    if out[0] == out[1]:
        raise ValueError("the two points coincide")
    return out[0], out[1]


def _b_index(frame: Frame, x: int, x2: int) -> int:
    return 1 if frame.qs.q(x ^ x2) else 2


def _c_index(frame: Frame, x: int, x2: int) -> int:
    qs = frame.qs
    y = x ^ x2
    singular = 3 - qs.q(x) - qs.q(x2) - qs.q(y)
    kind = LINE_TYPES[singular]
    if kind == "external":
        return 1
    if kind != "tangent":
        raise ConsistencyError(
            f"line <{render(x, frame.m)},{render(x2, frame.m)}> through two nonsingular "
            f"points is {kind}"
        )
    if contains(frame.pi, y) or contains(frame.sigma, y):
        return 3
    j1, j2 = _crossing_line(frame, y).basis
    # J inside (X + X')^perp iff both spanning vectors of J are orthogonal to x and x'
    px, px2 = qs.polar(x), qs.polar(x2)
    inside = not any(parity(j & p) for j in (j1, j2) for p in (px, px2))
    return 4 if inside else 2


def classify_nonsingular_pair_B(frame: Frame, x: Subspace, x2: Subspace) -> RelationLabel:
    u, w = _pair_vectors(frame, x, x2)
    return RelationLabel("B", _b_index(frame, u, w))


def classify_nonsingular_pair_C(frame: Frame, x: Subspace, x2: Subspace) -> RelationLabel:
    u, w = _pair_vectors(frame, x, x2)
    return RelationLabel("C", _c_index(frame, u, w))


# ---------------------------------------------------------------------------
# label matrices

def vertices(frame: Frame, family: str) -> list:
    """Canonical vertex list: antiflags for A, nonsingular points for B and C."""
    if family == "A":
        return antiflags(frame)
    if family in ("B", "C"):
        return nonsingular_points(frame)
    raise ValueError(f"unknown relation family {family!r}")


def vertex_count(n: int) -> int:
    return ((1 << n) - 1) << (n - 1)


def _classify_rows(frame: Frame, family: str, start: int, stop: int) -> np.ndarray:
    verts = vertices(frame, family)
    v = len(verts)
    block = np.zeros((stop - start, v), dtype=np.int8)
    if family == "A":
        items = [(af.p.vector, af.h) for af in verts]
        for u in range(start, stop):
            p1, h1 = items[u]
            row = block[u - start]
            for w in range(u + 1, v):
                p2, h2 = items[w]
                row[w] = _a_index(p1, h1, p2, h2)
        return block
    fn = _b_index if family == "B" else _c_index
    vecs = [pt.basis[0] for pt in verts]
    for u in range(start, stop):
        x = vecs[u]
        row = block[u - start]
        for w in range(u + 1, v):
            row[w] = fn(frame, x, vecs[w])
    return block


def _row_blocks(v: int, parts: int) -> list[tuple[int, int]]:
    # balance by pair count: row u carries v - u - 1 pairs
    total = v * (v - 1) // 2
    bounds, acc, start = [], 0, 0
    for u in range(v):
        acc += v - u - 1
        if acc >= total * (len(bounds) + 1) / parts and len(bounds) < parts - 1:
            bounds.append((start, u + 1))
            start = u + 1
    bounds.append((start, v))
    return [b for b in bounds if b[0] < b[1]]


def label_matrix(frame: Frame, family: str, workers: int | None = None) -> np.ndarray:
    """Symmetric v x v int8 matrix of relation indices within one family (0 = same vertex)."""
    v = vertex_count(frame.n)
    if v > EXHAUSTIVE_VERTEX_LIMIT:
        raise ResourceBoundError(
            f"{v} vertices exceed the exhaustive bound {EXHAUSTIVE_VERTEX_LIMIT}; use sampling"
        )
    workers = _worker_count() if workers is None else workers
    if workers > 1 and v * (v - 1) // 2 > PARALLEL_PAIR_THRESHOLD:
        blocks = _row_blocks(v, workers * 4)
        mat = np.zeros((v, v), dtype=np.int8)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_classify_rows, frame, family, a, b) for a, b in blocks]
            for (a, b), fut in zip(blocks, futures):
                mat[a:b] = fut.result()
    else:
        mat = _classify_rows(frame, family, 0, v)
    mat |= mat.T
    return mat


# ---------------------------------------------------------------------------
# graphs

@dataclass(frozen=True)
class RelationGraph:
    n: int
    label: RelationLabel
    vertices: tuple
    adjacency: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.adjacency)

    def degree(self, u: int) -> int:
        return self.adjacency[u].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adjacency):
            rest = row >> (u + 1)
            w = u + 1
            while rest:
                if rest & 1:
                    out.append((u, w))
                rest >>= 1
                w += 1
        return out

    def vertex_names(self) -> list[str]:
        m = 2 * self.n
        return [
            vx.render() if isinstance(vx, Antiflag) else render(vx.basis[0], m)
            for vx in self.vertices
        ]


def adjacency_from_mask(mask: np.ndarray) -> tuple[int, ...]:
    """Bitset rows (bit w of row u set iff mask[u, w]) from a boolean matrix."""
    packed = np.packbits(mask.astype(bool), axis=1, bitorder="little")
    return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def build_graph(
    frame: Frame,
    label: RelationLabel,
    matrix: np.ndarray | None = None,
    verts: Sequence | None = None,
) -> RelationGraph:
    """Graph on the family's vertices with u ~ w iff the pair is in relation ``label``."""
    if label.family not in FAMILY_SIZE:
        raise ValueError(f"{label} does not define a graph")
    if matrix is None:
        matrix = label_matrix(frame, label.family)
    if verts is None:
        verts = vertices(frame, label.family)
    adjacency = adjacency_from_mask(matrix == label.index)
    return RelationGraph(frame.n, label, tuple(verts), adjacency)


def graph_from_adjacency(adjacency: Sequence[int], n: int = 0, label: RelationLabel = EQUAL) -> RelationGraph:
    adjacency = tuple(adjacency)
    return RelationGraph(n, label, tuple(range(len(adjacency))), adjacency)


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        if self.k * (self.k - self.lam - 1) != (self.v - self.k - 1) * self.mu:
            raise ValueError(f"{self} violates k(k - lambda - 1) = (v - k - 1) mu")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def srg_params(graph: RelationGraph) -> SrgParams:
    """Brute-force (v, k, lambda, mu), via popcounts of adjacency-row intersections."""
    adj = graph.adjacency
    v = len(adj)
    if v == 0:
        raise NotStronglyRegular("empty graph")
    for u, row in enumerate(adj):
        if (row >> u) & 1:
            raise NotStronglyRegular("graph has a loop", (u,))
        for w in range(u):
            if ((row >> w) & 1) != ((adj[w] >> u) & 1):
                raise NotStronglyRegular("adjacency is not symmetric", (u, w))
    k = adj[0].bit_count()
    for u, row in enumerate(adj):
        if row.bit_count() != k:
            raise NotStronglyRegular(f"vertex {u} has degree {row.bit_count()}, vertex 0 has {k}", (0, u))
    if k == 0:
        raise NotStronglyRegular("graph is edgeless")
    if k == v - 1:
        raise NotStronglyRegular("graph is complete")
    lam = mu = None
    for u in range(v):
        row = adj[u]
        for w in range(u + 1, v):
            c = (row & adj[w]).bit_count()
            if (row >> w) & 1:
                if lam is None:
                    lam = c
                elif c != lam:
                    raise NotStronglyRegular(f"adjacent pair has {c} common neighbours, not {lam}", (u, w))
            else:
                if mu is None:
                    mu = c
                elif c != mu:
                    raise NotStronglyRegular(f"non-adjacent pair has {c} common neighbours, not {mu}", (u, w))
    return SrgParams(v, k, lam, mu)


def degree_table(matrix: np.ndarray, family: str) -> np.ndarray:
    """Per-vertex neighbour counts, shape (v, family size); column i-1 counts relation i."""
    return np.stack(
        [(matrix == i).sum(axis=1) for i in range(1, FAMILY_SIZE[family] + 1)], axis=1
    )


def expected_degrees(n: int, family: str) -> tuple[int, ...]:
    """Closed-form per-vertex degrees of each relation of a family."""
    a = (1 << (n - 1)) - 1
    if family in ("A", "C"):
        return (a << (n - 1), a << (n - 2), 2 * a, a * ((1 << (n - 2)) - 1))
    if family == "B":
        return (a << (n - 1), ((1 << (n - 1)) + 1) * a)
    raise ValueError(f"unknown relation family {family!r}")


def published_b1_params(n: int) -> tuple[int, int, int, int]:
    """(v, k, lambda, mu) as quoted in the literature for the complement of NO+(2n, 2).

    Kept as a bare tuple: it is compared against brute force, never trusted.
    """
    v = vertex_count(n)
    k = ((1 << (n - 1)) - 1) << (n - 1)
    lam = ((1 << (n - 2)) - 1) << (n - 1)
    mu = ((1 << (n - 1)) - 1) << (n - 2)
    return (v, k, lam, mu)


def forward_permutation(frame: Frame, points: Sequence[Subspace], afs: Sequence[Antiflag]) -> list[int]:
    """perm[i] = index of f(points[i]) in afs."""
    pos = {af: i for i, af in enumerate(afs)}
    perm = []
    for x in points:
        af = forward(frame, x)
        if af not in pos:
            raise ConsistencyError(f"f({x}) = ({af.p}, {af.h}) is not among the enumerated antiflags")
        perm.append(pos[af])
    return perm
