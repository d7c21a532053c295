import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperquad.gf2 import (
    Subspace,
    contains,
    coordinates,
    combine,
    enumerate_points,
    hyperplanes_of,
    iter_subspaces,
    parse_vector,
    render,
    span,
    subspace_intersection,
    subspace_sum,
    unit,
)
from oracles import span_set

e1, e2, e3, e4 = (unit(i) for i in range(1, 5))


def subspaces(max_m=8):
    return st.integers(1, max_m).flatmap(
        lambda m: st.tuples(
            st.just(m),
            st.lists(st.integers(0, (1 << m) - 1), max_size=m + 1),
            st.lists(st.integers(0, (1 << m) - 1), max_size=m + 1),
        )
    )


def test_unit_vectors_follow_coordinate_order():
    assert e1 == 0b1 and e2 == 0b10
    assert render(e1 + e2, 4) == "1100"
    assert parse_vector("0101") == (e2 | e4, 4)


@pytest.mark.parametrize("bad", ["", "01a", "2"])
def test_parse_vector_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_vector(bad)


def test_span_examples():
    assert span([], 4) == Subspace.zero(4)
    assert span([], 4).dim == 0
    assert span([e1, e1 | e2], 4).basis == (e1, e2)
    assert span([e1, e1], 4).basis == (e1,)


def test_span_rejects_out_of_range_vector():
    with pytest.raises(ValueError):
        span([1 << 4], 4)


def test_rref_shape():
    s = span([0b1011, 0b0110, 0b1101], 4)
    pivots = [b & -b for b in s.basis]
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for b in s.basis:
        for p in pivots:
            if p != b & -b:
                assert not b & p


def test_sum_examples():
    a, b = span([e1], 4), span([e2], 4)
    assert subspace_sum(a, b) == span([e1, e2], 4)
    s = span([e1 | e3, e2], 4)
    assert subspace_sum(s, s) == s
    assert subspace_sum(span([e1], 4), span([e1 | e2], 4)) == span([e1, e2], 4)


def test_intersection_examples():
    s = span([e1 | e3, e2], 4)
    assert subspace_intersection(s, s) == s
    assert subspace_intersection(span([e1, e2], 4), span([e2, e3], 4)) == span([e2], 4)
    assert subspace_intersection(span([e1], 4), span([e2], 4)).dim == 0


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        subspace_sum(span([1], 3), span([1], 4))
    with pytest.raises(ValueError):
        subspace_intersection(span([1], 3), span([1], 4))
    with pytest.raises(ValueError):
        contains(span([1], 3), 1 << 3)


def test_contains_examples():
    s = span([e1, e2], 4)
    assert contains(s, e1 | e2)
    assert not contains(span([e1], 4), e2)
    assert contains(s, 0)
    assert e1 in s


def test_enumerate_points_examples():
    assert enumerate_points(Subspace.zero(4)) == []
    assert enumerate_points(span([e1, e2], 4)) == [
        Subspace.point(e1, 4), Subspace.point(e2, 4), Subspace.point(e1 | e2, 4)
    ]
    assert len(enumerate_points(Subspace.full(6))) == 63


def test_hyperplanes_examples():
    assert len(hyperplanes_of(Subspace.full(3))) == 7
    assert hyperplanes_of(span([e1], 4)) == [Subspace.zero(4)]
    assert len(hyperplanes_of(Subspace.full(4))) == 15
    with pytest.raises(ValueError):
        hyperplanes_of(Subspace.zero(4))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hyperplane_incidence(n):
    full = Subspace.full(n)
    hs = hyperplanes_of(full)
    assert len(hs) == 2**n - 1 == len(set(hs))
    assert all(h.dim == n - 1 for h in hs)
    for v in range(1, 1 << n):
        assert sum(contains(h, v) for h in hs) == 2 ** (n - 1) - 1


def test_hyperplanes_of_subspace_stay_inside():
    s = span([0b10110, 0b01011, 0b11100], 5)
    for h in hyperplanes_of(s):
        assert h <= s and h.dim == s.dim - 1


def test_coordinates_round_trip():
    s = span([0b101100, 0b010011, 0b111000], 6)
    for v in s.vectors():
        assert combine(s, coordinates(s, v)) == v
    with pytest.raises(ValueError):
        coordinates(s, 0b000001 if not contains(s, 1) else 0b000010)


def test_subspace_census_v4():
    # Gaussian binomials [4 choose k]_2 = 1, 15, 35, 15, 1
    counts = [0] * 5
    for s in iter_subspaces(4):
        counts[s.dim] += 1
    assert counts == [1, 15, 35, 15, 1]


@settings(max_examples=300, deadline=None)
@given(subspaces())
def test_modular_law_and_containment(data):
    m, xs, ys = data
    s, t = span(xs, m), span(ys, m)
    total, meet = s + t, s & t
    assert s.dim + t.dim == total.dim + meet.dim
    assert meet <= s and meet <= t and s <= total and t <= total
    # against raw vector sets
    assert set(total.vectors()) == span_set(xs + ys)
    assert set(meet.vectors()) == span_set(xs) & span_set(ys)


@settings(max_examples=300, deadline=None)
@given(subspaces())
def test_canonical_and_enumeration(data):
    m, xs, _ = data
    s = span(xs, m)
    assert span(s.basis, m) == s
    assert span(reversed(xs), m) == s
    pts = enumerate_points(s)
    assert len(pts) == 2**s.dim - 1 == len(set(pts))
    assert all(contains(s, p.vector) for p in pts)
    assert [p.vector for p in pts] == sorted(p.vector for p in pts)
