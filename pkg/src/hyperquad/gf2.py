"""Linear algebra over GF(2) with vectors packed into Python ints.

Coordinate ``i`` (1-indexed, as written x_1 ... x_m) lives in bit ``i - 1``.
Subspaces are stored by their reduced row echelon basis, where the pivot of a
row is its lowest set bit (the leftmost coordinate in the 0/1 rendering).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_DIM = 64


def parity(v: int) -> int:
    return v.bit_count() & 1


def unit(i: int) -> int:
    """Basis vector e_i (1-indexed)."""
    return 1 << (i - 1)


def render(v: int, m: int) -> str:
    """0/1 string of length m, coordinate 1 leftmost."""
    return "".join("1" if (v >> i) & 1 else "0" for i in range(m))


def parse_vector(text: str) -> tuple[int, int]:
    """Inverse of :func:`render`; returns ``(bits, m)``."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a 0/1 coordinate string: {text!r}")
    if len(text) > MAX_DIM:
        raise ValueError(f"dimension {len(text)} exceeds {MAX_DIM}")
    bits = 0
    for i, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << i
    return bits, len(text)


def _check_dim(m: int) -> None:
    if not 0 <= m <= MAX_DIM:
        raise ValueError(f"ambient dimension must be in [0, {MAX_DIM}], got {m}")


def _rref(vectors: Iterable[int]) -> tuple[int, ...]:
    rows: dict[int, int] = {}  # pivot bit -> row
    for v in vectors:
        while v:
            low = v & -v
            row = rows.get(low)
            if row is None:
                rows[low] = v
                break
            v ^= row
    pivots = sorted(rows, reverse=True)
    for p in pivots:
        rp = rows[p]
        for q in pivots:
            if q != p and rows[q] & p:
                rows[q] ^= rp
    return tuple(rows[p] for p in sorted(rows))


def _annihilator(basis: Sequence[int], m: int) -> tuple[int, ...]:
    """RREF basis of {y : <b, y> = 0 for all b in basis} (dot product)."""
    pivot_rows = {b & -b: b for b in basis}
    out = []
    for f in range(m):
        fb = 1 << f
        if fb in pivot_rows:
            continue
        v = fb
        for p, row in pivot_rows.items():
            if row & fb:
                v |= p
        out.append(v)
    return _rref(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of V(m, 2) held as its canonical RREF basis.

    Equality and hashing are by ``(m, basis)``, which identifies the subspace.
    Build instances through :func:`span` unless the basis is already canonical.
    """

    m: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vector(self) -> int:
        """The nonzero vector of a point."""
        if len(self.basis) != 1:
            raise ValueError(f"not a point: dimension {self.dim}")
        return self.basis[0]

    def __contains__(self, v: int) -> bool:
        return contains(self, v)

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return subspace_intersection(self, other)

    def __le__(self, other: Subspace) -> bool:
        """Subspace inclusion."""
        _same_ambient(self, other)
        return all(contains(other, b) for b in self.basis)

    def vectors(self) -> list[int]:
        """All 2**dim vectors, ascending."""
        out = [0]
        for b in self.basis:
            out += [v ^ b for v in out]
        out.sort()
        return out

    def render(self) -> str:
        return "\n".join(render(b, self.m) for b in self.basis)

    def __str__(self) -> str:
        if not self.basis:
            return "<0>"
        return "<" + ",".join(render(b, self.m) for b in self.basis) + ">"

    @classmethod
    def point(cls, v: int, m: int) -> Subspace:
        if v == 0 or v >> m:
            raise ValueError(f"{v:#x} is not a nonzero vector of V({m},2)")
        return cls(m, (v,))

    @classmethod
    def full(cls, m: int) -> Subspace:
        _check_dim(m)
        return cls(m, tuple(1 << i for i in range(m)))

    @classmethod
    def zero(cls, m: int) -> Subspace:
        _check_dim(m)
        return cls(m, ())


def span(vectors: Iterable[int], m: int) -> Subspace:
    _check_dim(m)
    vectors = list(vectors)
    for v in vectors:
        if v < 0 or v >> m:
            raise ValueError(f"vector {v:#x} does not lie in V({m},2)")
    return Subspace(m, _rref(vectors))


def _same_ambient(s: Subspace, t: Subspace) -> None:
    if s.m != t.m:
        raise ValueError(f"ambient mismatch: V({s.m},2) vs V({t.m},2)")


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    _same_ambient(s, t)
    return Subspace(s.m, _rref(s.basis + t.basis))


def subspace_intersection(s: Subspace, t: Subspace) -> Subspace:
    # S & T = ann(ann(S) + ann(T))
    _same_ambient(s, t)
    m = s.m
    dual = _rref(_annihilator(s.basis, m) + _annihilator(t.basis, m))
    return Subspace(m, _annihilator(dual, m))


def annihilator(s: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    return Subspace(s.m, _annihilator(s.basis, s.m))


def contains(s: Subspace, v: int) -> bool:
    if v < 0 or v >> s.m:
        raise ValueError(f"vector {v:#x} does not lie in V({s.m},2)")
    # In RREF, v is in the span iff it equals the sum of the rows whose pivots it hits.
    w = 0
    for row in s.basis:
        if v & row & -row:
            w ^= row
    return w == v


def enumerate_points(s: Subspace) -> list[Subspace]:
    return [Subspace(s.m, (v,)) for v in s.vectors()[1:]]


def coordinates(s: Subspace, v: int) -> int:
    """Coefficients of v in the basis of s, as a bitmask over basis positions."""
    c = 0
    w = 0
    for k, row in enumerate(s.basis):
        if v & row & -row:
            c |= 1 << k
            w ^= row
    if w != v:
        raise ValueError(f"vector {render(v, s.m)} is not in {s}")
    return c


def combine(s: Subspace, c: int) -> int:
    """Vector with basis coefficients c (inverse of :func:`coordinates`)."""
    v = 0
    for k, row in enumerate(s.basis):
        if (c >> k) & 1:
            v ^= row
    return v


def kernel_of_functional(s: Subspace, c: int) -> Subspace:
    """Kernel in s of the functional with coefficient mask c on the basis of s."""
    if not 0 < c < (1 << s.dim):
        raise ValueError(f"functional {c:#x} is not a nonzero functional on a {s.dim}-space")
    j = (c & -c).bit_length() - 1
    bj = s.basis[j]
    gens = []
    for k, row in enumerate(s.basis):
        if k == j:
            continue
        gens.append(row ^ bj if (c >> k) & 1 else row)
    return Subspace(s.m, _rref(gens))


def hyperplanes_of(s: Subspace) -> list[Subspace]:
    """All (dim-1)-subspaces of s, one per nonzero functional in ascending order."""
    if s.dim == 0:
        raise ValueError("the zero subspace has no hyperplanes")
    return [kernel_of_functional(s, c) for c in range(1, 1 << s.dim)]


def iter_subspaces(m: int, dim: int | None = None) -> Iterator[Subspace]:
    """All subspaces of V(m, 2) (optionally of one dimension), by increasing dimension.

    Within one dimension the order is ascending in the basis tuple.
    """
    _check_dim(m)
    layer = {Subspace.zero(m)}
    for d in range(m + 1):
        ordered = sorted(layer, key=lambda sp: sp.basis)
        if dim is None or dim == d:
            yield from ordered
        if d == m or (dim is not None and d >= dim):
            return
        nxt = set()
        for sp in ordered:
            for v in range(1, 1 << m):
                if not contains(sp, v):
                    nxt.add(Subspace(m, _rref(sp.basis + (v,))))
        layer = nxt
