"""Quadratic forms over GF(2), their polarity, and restriction classification."""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf2 import (
    MAX_DIM,
    Subspace,
    _annihilator,
    _rref,
    combine,
    contains,
    parity,
    span,
)

HYPERBOLIC = "hyperbolic"
ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
ZERO = "zero"

KINDS = (HYPERBOLIC, ELLIPTIC, PARABOLIC)


class ConsistencyError(RuntimeError):
    """Raised when a computed invariant contradicts the geometry.

    Valid inputs never trigger it; seeing one means an implementation bug.
    """


def _pair_masks(m: int) -> tuple[int, int]:
    odd = 0  # bits 0, 2, 4, ... (coordinates x_1, x_3, ...)
    for i in range(0, m, 2):
        odd |= 1 << i
    return odd, odd << 1


@dataclass(frozen=True)
class QuadraticSpace:
    """V(m, 2) with Q(x) = sum of c_ij x_i x_j over i <= j.

    ``rows[i]`` is the bitmask of all j >= i (0-indexed) with c_ij = 1, i.e.
    row i of the upper-triangular coefficient table.
    """

    m: int
    rows: tuple[int, ...]
    kind_hint: str | None = None
    _gram: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _pairing: bool = field(init=False, repr=False, compare=False)
    _odd: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.m <= MAX_DIM:
            raise ValueError(f"ambient dimension must be in [1, {MAX_DIM}], got {self.m}")
        if len(self.rows) != self.m:
            raise ValueError("coefficient table must have one row per coordinate")
        for i, r in enumerate(self.rows):
            if r >> self.m or r & ((1 << i) - 1):
                raise ValueError(f"row {i} is not upper-triangular in V({self.m},2)")
        gram = []
        for i in range(self.m):
            g = self.rows[i] & ~(1 << i)
            for j in range(i):
                if (self.rows[j] >> i) & 1:
                    g |= 1 << j
            gram.append(g)
        object.__setattr__(self, "_gram", tuple(gram))
        odd, _ = _pair_masks(self.m)
        pairing = self.m % 2 == 0 and all(
            r == (0b10 << i if i % 2 == 0 else 0) for i, r in enumerate(self.rows)
        )
        object.__setattr__(self, "_pairing", pairing)
        object.__setattr__(self, "_odd", odd)

    def coeff(self, i: int, j: int) -> int:
        """c_ij for 1-indexed i <= j."""
        if not 1 <= i <= j <= self.m:
            raise ValueError(f"need 1 <= i <= j <= {self.m}")
        return (self.rows[i - 1] >> (j - 1)) & 1

    def q(self, x: int) -> int:
        if self._pairing:
            return parity(x & (x >> 1) & self._odd)
        val = 0
        rest = x
        while rest:
            low = rest & -rest
            val ^= parity(x & self.rows[low.bit_length() - 1])
            rest ^= low
        return val

    def polar(self, x: int) -> int:
        """The vector y -> B(x, y) as a bitmask (Gram matrix times x)."""
        if self._pairing:
            odd = self._odd
            return ((x & odd) << 1) | ((x >> 1) & odd)
        out = 0
        for i, g in enumerate(self._gram):
            if parity(g & x):
                out |= 1 << i
        return out

    def b(self, x: int, y: int) -> int:
        return parity(self.polar(x) & y)

    def _check(self, *vectors: int) -> None:
        for v in vectors:
            if v < 0 or v >> self.m:
                raise ValueError(f"vector {v:#x} does not lie in V({self.m},2)")

    def _check_sub(self, s: Subspace) -> None:
        if s.m != self.m:
            raise ValueError(f"ambient mismatch: V({s.m},2) vs V({self.m},2)")


def standard_form(kind: str, m: int) -> QuadraticSpace:
    """Hyperbolic x1x2 + x3x4 + ..., elliptic x1^2 + x1x2 + x2^2 + x3x4 + ...,
    or parabolic x1^2 + x2x3 + ... on V(m, 2)."""
    if m < 1:
        raise ValueError("m must be positive")
    rows = [0] * m
    if kind in (HYPERBOLIC, ELLIPTIC):
        if m % 2:
            raise ValueError(f"{kind} form needs even m, got {m}")
        for i in range(0, m, 2):
            rows[i] = 0b10 << i
        if kind == ELLIPTIC:
            rows[0] |= 1
            rows[1] |= 0b10
    elif kind == PARABOLIC:
        if m % 2 == 0:
            raise ValueError(f"parabolic form needs odd m, got {m}")
        rows[0] = 1
        for i in range(1, m, 2):
            rows[i] = 0b10 << i
    else:
        raise ValueError(f"unknown form kind {kind!r}")
    return QuadraticSpace(m, tuple(rows), kind)


def eval_q(qs: QuadraticSpace, x: int) -> int:
    qs._check(x)
    return qs.q(x)


def bilinear(qs: QuadraticSpace, x: int, y: int) -> int:
    qs._check(x, y)
    return qs.b(x, y)


def is_nondegenerate(qs: QuadraticSpace) -> bool:
    return len(_rref(qs._gram)) == qs.m


def perp(qs: QuadraticSpace, s: Subspace) -> Subspace:
    """{y : B(s, y) = 0 for all s in S}; the ambient polar form must be nondegenerate."""
    qs._check_sub(s)
    return Subspace(qs.m, _annihilator(_rref(qs.polar(b) for b in s.basis), qs.m))


def singular_points(qs: QuadraticSpace, s: Subspace | None = None) -> list[Subspace]:
    if s is None:
        s = Subspace.full(qs.m)
    qs._check_sub(s)
    return [Subspace(qs.m, (v,)) for v in s.vectors()[1:] if not qs.q(v)]


def nonsingular_points(qs: QuadraticSpace, s: Subspace | None = None) -> list[Subspace]:
    if s is None:
        s = Subspace.full(qs.m)
    qs._check_sub(s)
    return [Subspace(qs.m, (v,)) for v in s.vectors()[1:] if qs.q(v)]


def is_totally_singular(qs: QuadraticSpace, s: Subspace) -> bool:
    qs._check_sub(s)
    basis = s.basis
    for i, u in enumerate(basis):
        if qs.q(u):
            return False
        pu = qs.polar(u)
        for w in basis[i + 1:]:
            if parity(pu & w):
                return False
    return True


# Number of singular vectors, zero included, of a nondegenerate base of dimension d.
def singular_vector_count(kind: str, d: int) -> int:
    if kind == ZERO:
        if d != 0:
            raise ValueError("the zero form lives on the zero space")
        return 1
    if kind == PARABOLIC:
        if d % 2 == 0:
            raise ValueError("parabolic base needs odd dimension")
        return 1 << (d - 1)
    if d % 2 or d == 0:
        raise ValueError(f"{kind} base needs positive even dimension")
    r = d // 2
    if kind == HYPERBOLIC:
        return (1 << (d - 1)) + (1 << (r - 1))
    if kind == ELLIPTIC:
        return (1 << (d - 1)) - (1 << (r - 1))
    raise ValueError(f"unknown form kind {kind!r}")


def witt_index(kind: str, d: int) -> int:
    if kind == ZERO:
        return 0
    if kind == PARABOLIC:
        return (d - 1) // 2
    if kind == HYPERBOLIC:
        return d // 2
    if kind == ELLIPTIC:
        return d // 2 - 1
    raise ValueError(f"unknown form kind {kind!r}")


@dataclass(frozen=True)
class FormClass:
    """Isometry type of a (possibly degenerate) quadratic form: a cone over a base."""

    total_dim: int
    vertex_dim: int
    base_kind: str
    base_rank: int

    @property
    def base_dim(self) -> int:
        return self.total_dim - self.vertex_dim

    @property
    def rank(self) -> int:
        """Witt index of the whole form (vertex plus base rank)."""
        return self.vertex_dim + self.base_rank

    def singular_vector_count(self) -> int:
        return singular_vector_count(self.base_kind, self.base_dim) << self.vertex_dim

    def __str__(self) -> str:
        base = {HYPERBOLIC: "O+", ELLIPTIC: "O-", PARABOLIC: "O", ZERO: "0"}[self.base_kind]
        text = f"{base}({self.base_dim},2)"
        if self.vertex_dim:
            text = f"cone(vertex dim {self.vertex_dim}) over {text}"
        return text


def _restricted_radical(qs: QuadraticSpace, s: Subspace) -> Subspace:
    """Radical of B restricted to S: {u in S : B(u, w) = 0 for all w in S}."""
    d = s.dim
    basis = s.basis
    # Gram matrix of B|_S in basis coordinates, one bitmask row per basis vector.
    gram = []
    for u in basis:
        pu = qs.polar(u)
        row = 0
        for k, w in enumerate(basis):
            if parity(pu & w):
                row |= 1 << k
        gram.append(row)
    coeffs = _annihilator(_rref(gram), d)
    return span((combine(s, c) for c in coeffs), qs.m)


def classify_restriction(qs: QuadraticSpace, s: Subspace) -> FormClass:
    """Classify Q restricted to S as a cone (quadratic radical) over a nondegenerate base."""
    qs._check_sub(s)
    rad = _restricted_radical(qs, s)
    # Q is additive on the bilinear radical, so its singular vectors form a subspace.
    values = [qs.q(u) for u in rad.basis]
    vertex_dim = rad.dim - 1 if any(values) else rad.dim
    base_dim = s.dim - vertex_dim
    singular = sum(1 for v in s.vectors() if not qs.q(v))
    if singular % (1 << vertex_dim):
        raise ConsistencyError(f"singular count {singular} not divisible by 2^{vertex_dim} on {s}")
    base_count = singular >> vertex_dim
    if base_dim == 0:
        candidates = [ZERO]
    elif base_dim % 2:
        candidates = [PARABOLIC]
    else:
        candidates = [HYPERBOLIC, ELLIPTIC]
    for kind in candidates:
        if singular_vector_count(kind, base_dim) == base_count:
            return FormClass(s.dim, vertex_dim, kind, witt_index(kind, base_dim))
    raise ConsistencyError(
        f"restriction to {s} (dim {s.dim}, vertex {vertex_dim}) has {base_count} singular "
        f"base vectors, matching no nondegenerate type"
    )


LINE_TYPES = ("external", "tangent", "secant", "totally_singular")


def line_type(qs: QuadraticSpace, line: Subspace) -> str:
    qs._check_sub(line)
    if line.dim != 2:
        raise ValueError(f"expected a line, got a {line.dim}-space")
    u, w = line.basis
    return LINE_TYPES[3 - qs.q(u) - qs.q(w) - qs.q(u ^ w)]


def maximal_ts_through(qs: QuadraticSpace, g: Subspace) -> list[Subspace]:
    """Maximal totally singular subspaces through a totally singular (m/2 - 1)-space G."""
    qs._check_sub(g)
    if qs.m % 2 or not is_nondegenerate(qs):
        raise ValueError("needs a nondegenerate even-dimensional ambient form")
    n = qs.m // 2
    if not is_totally_singular(qs, g):
        raise ValueError(f"{g} is not totally singular")
    if g.dim != n - 1:
        raise ValueError(f"expected a totally singular {n - 1}-space, got dimension {g.dim}")
    found = []
    for v in perp(qs, g).vectors():
        if qs.q(v) or contains(g, v):
            continue
        sp = Subspace(qs.m, _rref(g.basis + (v,)))
        if sp not in found:
            found.append(sp)
    found.sort(key=lambda sp: sp.basis)
    return found


def describe(qs: QuadraticSpace) -> str:
    terms = []
    for i in range(qs.m):
        for j in range(i, qs.m):
            if (qs.rows[i] >> j) & 1:
                terms.append(f"x{i + 1}^2" if i == j else f"x{i + 1}x{j + 1}")
    return " + ".join(terms) or "0"


__all__ = [
    "ConsistencyError",
    "FormClass",
    "QuadraticSpace",
    "bilinear",
    "classify_restriction",
    "eval_q",
    "is_nondegenerate",
    "is_totally_singular",
    "line_type",
    "maximal_ts_through",
    "nonsingular_points",
    "perp",
    "singular_points",
    "standard_form",
]
