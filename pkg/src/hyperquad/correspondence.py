"""Bijection between nonsingular points of O+(2n, 2) and antiflags of V(n, 2).

A :class:`Frame` fixes the hyperbolic form on V(2n, 2) together with two
disjoint maximal totally singular subspaces ``pi`` and ``sigma``.  Antiflags
live inside ``sigma``; :func:`sigma_coordinates` identifies ``sigma`` with
V(n, 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .gf2 import Subspace, _rref, combine, contains, coordinates, hyperplanes_of, render, span
from .quadric import (
    HYPERBOLIC,
    ConsistencyError,
    QuadraticSpace,
    is_totally_singular,
    perp,
    standard_form,
)


@dataclass(frozen=True)
class Frame:
    n: int
    qs: QuadraticSpace
    pi: Subspace
    sigma: Subspace
    name: str = "custom"

    def __post_init__(self):
        m = 2 * self.n
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.qs.m != m or self.pi.m != m or self.sigma.m != m:
            raise ValueError(f"frame components must live in V({m},2)")
        for label, sp in (("pi", self.pi), ("sigma", self.sigma)):
            if sp.dim != self.n or not is_totally_singular(self.qs, sp):
                raise ValueError(f"{label} must be a totally singular {self.n}-space")
        if (self.pi & self.sigma).dim:
            raise ValueError("pi and sigma must be disjoint")

    @property
    def m(self) -> int:
        return 2 * self.n

    def swapped(self) -> Frame:
        return Frame(self.n, self.qs, self.sigma, self.pi, f"{self.name}-swapped")

    def describe(self) -> str:
        return f"{self.name}: Pi={self.pi}, Sigma={self.sigma}"


def standard_frame(n: int) -> Frame:
    """Pi = <e1, e3, ..., e_{2n-1}>, Sigma = <e2, e4, ..., e_{2n}> under x1x2 + ... + x_{2n-1}x_{2n}."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    m = 2 * n
    qs = standard_form(HYPERBOLIC, m)
    pi = span((1 << i for i in range(0, m, 2)), m)
    sigma = span((1 << i for i in range(1, m, 2)), m)
    return Frame(n, qs, pi, sigma, "standard")


@dataclass(frozen=True)
class Antiflag:
    """A point P and a hyperplane H of sigma with P not in H.

    Ordering compares the vector of P, then the canonical basis of H.
    """

    p: Subspace
    h: Subspace

    def sort_key(self) -> tuple:
        return (self.p.basis, self.h.basis)

    def render(self) -> str:
        m = self.p.m
        return render(self.p.vector, m) + ";" + ",".join(render(b, m) for b in self.h.basis)


def is_antiflag(frame: Frame, af: Antiflag) -> bool:
    p, h = af.p, af.h
    return (
        p.dim == 1
        and h.dim == frame.n - 1
        and p <= frame.sigma
        and h <= frame.sigma
        and not contains(h, p.vector)
    )


def nonsingular_points(frame: Frame) -> list[Subspace]:
    """Vertices of NO+(2n, 2), ascending by vector."""
    qs, m = frame.qs, frame.m
    return [Subspace(m, (v,)) for v in range(1, 1 << m) if qs.q(v)]


def singular_points(frame: Frame) -> list[Subspace]:
    qs, m = frame.qs, frame.m
    return [Subspace(m, (v,)) for v in range(1, 1 << m) if not qs.q(v)]


def antiflags(frame: Frame) -> list[Antiflag]:
    """All antiflags of sigma in canonical order."""
    sigma = frame.sigma
    hyperplanes = hyperplanes_of(sigma)
    out = []
    for p in sigma.vectors()[1:]:
        pt = Subspace(frame.m, (p,))
        for h in hyperplanes:
            if not contains(h, p):
                out.append(Antiflag(pt, h))
    out.sort(key=Antiflag.sort_key)
    return out


class ForwardTrace(NamedTuple):
    x: Subspace
    x_perp: Subspace
    g: Subspace
    h: Subspace
    p: Subspace
    line: Subspace


def _check_nonsingular_point(frame: Frame, x: Subspace) -> int:
    if x.m != frame.m:
        raise ValueError(f"point must live in V({frame.m},2)")
    if x.dim != 1:
        raise ValueError(f"expected a point, got a {x.dim}-space")
    v = x.basis[0]
    if not frame.qs.q(v):
        raise ValueError(f"{x} is singular: Q(x) = 0")
    return v


def forward_trace(frame: Frame, x: Subspace) -> ForwardTrace:
    """f(X) together with the intermediate subspaces G, H and L = (G + H)^perp."""
    _check_nonsingular_point(frame, x)
    qs, n = frame.qs, frame.n
    xp = perp(qs, x)
    g = xp & frame.pi
    h = xp & frame.sigma
    p = perp(qs, g) & frame.sigma
    if g.dim != n - 1 or h.dim != n - 1 or p.dim != 1:
        raise ConsistencyError(
            f"forward({x}): dims G={g.dim}, H={h.dim}, P={p.dim}; expected {n - 1}, {n - 1}, 1"
        )
    line = perp(qs, g + h)
    return ForwardTrace(x, xp, g, h, p, line)


def forward(frame: Frame, x: Subspace) -> Antiflag:
    """f(X) = (P, H) with H = X^perp & Sigma and P = (X^perp & Pi)^perp & Sigma."""
    _check_nonsingular_point(frame, x)
    qs = frame.qs
    xp = perp(qs, x)
    g = xp & frame.pi
    h = xp & frame.sigma
    p = perp(qs, g) & frame.sigma
    if g.dim != frame.n - 1 or h.dim != frame.n - 1 or p.dim != 1:
        raise ConsistencyError(f"forward({x}): dims G={g.dim}, H={h.dim}, P={p.dim}")
    return Antiflag(p, h)


def inverse(frame: Frame, af: Antiflag) -> Subspace:
    """The unique nonsingular point X with f(X) = af."""
    if not is_antiflag(frame, af):
        raise ValueError(f"({af.p}, {af.h}) is not an antiflag of Sigma")
    qs, n = frame.qs, frame.n
    g = perp(qs, af.p) & frame.pi
    if g.dim != n - 1 or perp(qs, g) & frame.sigma != af.p:
        raise ConsistencyError(f"cannot recover G from P = {af.p}")
    line = perp(qs, g + af.h)
    if line.dim != 2:
        raise ConsistencyError(f"(G + H)^perp has dimension {line.dim}, expected a line")
    u, w = line.basis
    found = [v for v in (u, w, u ^ w) if qs.q(v)]
    if len(found) != 1:
        raise ConsistencyError(f"line {line} carries {len(found)} nonsingular points, expected 1")
    return Subspace(frame.m, (found[0],))


def _check_exterior_singular(frame: Frame, y: Subspace) -> int:
    if y.m != frame.m or y.dim != 1:
        raise ValueError(f"expected a point of V({frame.m},2)")
    v = y.basis[0]
    if frame.qs.q(v):
        raise ValueError(f"{y} is nonsingular")
    if contains(frame.pi, v) or contains(frame.sigma, v):
        raise ValueError(f"{y} lies in Pi or Sigma")
    return v


@lru_cache(maxsize=1 << 16)
def _crossing_line(frame: Frame, y: int) -> Subspace:
    qs = frame.qs
    g = perp(qs, Subspace(frame.m, (y,))) & frame.pi
    z = perp(qs, g) & frame.sigma
    if z.dim != 1:
        raise ConsistencyError(f"G^perp & Sigma has dimension {z.dim} for Y = {y:#x}")
    line = Subspace(frame.m, _rref((y, z.basis[0])))
    if (
        not is_totally_singular(qs, line)
        or (line & frame.pi).dim != 1
        or (line & frame.sigma).dim != 1
    ):
        raise ConsistencyError(f"constructed line {line} does not cross Pi and Sigma")
    return line


def crossing_line(frame: Frame, y: Subspace) -> Subspace:
    """The unique line through a singular Y (outside Pi and Sigma) meeting both Pi and Sigma.

    Built as Y + (G^perp & Sigma) with G = Y^perp & Pi.
    """
    return _crossing_line(frame, _check_exterior_singular(frame, y))


def sigma_coordinates(frame: Frame, s: Subspace) -> Subspace:
    """Express a subspace of Sigma in the basis of Sigma, i.e. as a subspace of V(n, 2)."""
    if s.m != frame.m:
        raise ValueError(f"subspace must live in V({frame.m},2)")
    if not s <= frame.sigma:
        raise ValueError(f"{s} is not contained in Sigma")
    return span((coordinates(frame.sigma, b) for b in s.basis), frame.n)


def from_sigma_coordinates(frame: Frame, s: Subspace) -> Subspace:
    if s.m != frame.n:
        raise ValueError(f"subspace must live in V({frame.n},2)")
    return span((combine(frame.sigma, c) for c in s.basis), frame.m)
