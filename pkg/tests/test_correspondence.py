import pytest

from hyperquad.correspondence import (
    Antiflag,
    Frame,
    antiflags,
    crossing_line,
    forward,
    forward_trace,
    from_sigma_coordinates,
    inverse,
    is_antiflag,
    nonsingular_points,
    sigma_coordinates,
    singular_points,
    standard_frame,
)
from hyperquad.gf2 import Subspace, contains, span, unit
from hyperquad.quadric import is_totally_singular, perp
from oracles import lines_through, q_literal, span_set

e = {i: unit(i) for i in range(1, 11)}


def pt(v, m):
    return Subspace.point(v, m)


def test_standard_frame_n2():
    f = standard_frame(2)
    assert f.pi == span([e[1], e[3]], 4)
    assert f.sigma == span([e[2], e[4]], 4)
    for sp in (f.pi, f.sigma):
        assert all(q_literal(f.qs, v) == 0 for v in span_set(sp.basis))
    assert (f.pi & f.sigma).dim == 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_standard_frame_shape(n):
    f = standard_frame(n)
    assert f.pi.dim == f.sigma.dim == n
    assert (f.pi & f.sigma).dim == 0
    assert is_totally_singular(f.qs, f.pi) and is_totally_singular(f.qs, f.sigma)


def test_frame_validation():
    with pytest.raises(ValueError):
        standard_frame(1)
    f = standard_frame(2)
    with pytest.raises(ValueError):
        Frame(2, f.qs, f.pi, f.pi)
    with pytest.raises(ValueError):
        Frame(2, f.qs, span([e[1], e[2]], 4), f.sigma)


def test_forward_examples():
    f = standard_frame(2)
    assert forward(f, pt(e[1] | e[2], 4)) == Antiflag(pt(e[2], 4), span([e[4]], 4))
    assert forward(f, pt(e[3] | e[4], 4)) == Antiflag(pt(e[4], 4), span([e[2]], 4))


def test_forward_trace_intermediates():
    tr = forward_trace(standard_frame(2), pt(e[1] | e[2], 4))
    assert tr.g == span([e[3]], 4)
    assert perp(standard_frame(2).qs, tr.g) == span([e[1], e[2], e[3]], 4)
    assert tr.line == span([e[1], e[2]], 4)


def test_forward_rejects_bad_input():
    f = standard_frame(2)
    with pytest.raises(ValueError):
        forward(f, pt(e[1], 4))
    with pytest.raises(ValueError):
        forward(f, span([e[1], e[2]], 4))


def test_inverse_examples():
    f = standard_frame(2)
    assert inverse(f, Antiflag(pt(e[2], 4), span([e[4]], 4))) == pt(e[1] | e[2], 4)
    with pytest.raises(ValueError):
        inverse(f, Antiflag(pt(e[2], 4), span([e[2]], 4)))
    with pytest.raises(ValueError):
        inverse(f, Antiflag(pt(e[1], 4), span([e[4]], 4)))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("swap", [False, True])
def test_bijection_and_round_trip(n, swap):
    f = standard_frame(n)
    if swap:
        f = f.swapped()
    pts = nonsingular_points(f)
    afs = antiflags(f)
    count = (2**n - 1) * 2 ** (n - 1)
    assert len(pts) == len(afs) == count
    images = [forward(f, x) for x in pts]
    assert all(is_antiflag(f, a) and not contains(a.h, a.p.vector) for a in images)
    assert set(images) == set(afs) and len(set(images)) == count
    assert all(inverse(f, a) == x for a, x in zip(images, pts))
    assert all(forward(f, inverse(f, a)) == a for a in afs)


def test_antiflag_count_brute_force_n3():
    # points and hyperplanes of V(3,2) from raw vector sets
    hyper = {frozenset(v for v in range(8) if bin(v & c).count("1") % 2 == 0) for c in range(1, 8)}
    count = sum(1 for p in range(1, 8) for h in hyper if p not in h)
    assert count == 28 == len(antiflags(standard_frame(3)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_line_points(n):
    f = standard_frame(n)
    for x in nonsingular_points(f):
        tr = forward_trace(f, x)
        third = perp(f.qs, tr.h) & f.pi
        assert set(tr.line.vectors()[1:]) == {x.vector, tr.p.vector, third.vector}
        assert f.qs.q(tr.p.vector) == 0 and f.qs.q(third.vector) == 0


def test_crossing_line_n2():
    f = standard_frame(2)
    y = e[1] | e[4]
    assert q_literal(f.qs, y) == 0
    line = crossing_line(f, pt(y, 4))
    assert contains(line, y)
    assert (line & f.pi).dim == 1 and (line & f.sigma).dim == 1
    assert is_totally_singular(f.qs, line)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_crossing_line_unique_brute_force(n):
    f = standard_frame(n)
    m = 2 * n
    pi, sigma = set(f.pi.vectors()), set(f.sigma.vectors())
    exterior = [y for y in singular_points(f) if y.vector not in pi and y.vector not in sigma]
    assert len(exterior) == (2 ** (n - 1) + 1) * (2**n - 1) - 2 * (2**n - 1)
    if n == 3:
        assert len(exterior) == 21
    for y in exterior:
        found = [ln for ln in lines_through(y.vector, m) if ln & pi and ln & sigma]
        assert len(found) == 1
        built = crossing_line(f, y)
        assert set(built.vectors()[1:]) == set(found[0])
        assert all(q_literal(f.qs, v) == 0 for v in found[0])


def test_crossing_line_preconditions():
    f = standard_frame(2)
    with pytest.raises(ValueError):
        crossing_line(f, pt(e[1], 4))
    with pytest.raises(ValueError):
        crossing_line(f, pt(e[1] | e[2], 4))


def test_sigma_coordinates_examples():
    f2, f3 = standard_frame(2), standard_frame(3)
    assert sigma_coordinates(f2, span([e[2]], 4)) == span([e[1]], 2)
    assert sigma_coordinates(f3, span([e[2] | e[6]], 6)) == span([e[1] | e[3]], 3)
    assert sigma_coordinates(f3, f3.sigma) == Subspace.full(3)
    with pytest.raises(ValueError):
        sigma_coordinates(f3, span([e[1]], 6))


def test_sigma_coordinates_invertible():
    f = standard_frame(4)
    for a in antiflags(f):
        for s in (a.p, a.h):
            assert from_sigma_coordinates(f, sigma_coordinates(f, s)) == s


def test_inverse_rejects_non_hyperplane():
    f = standard_frame(3)
    a = antiflags(f)[0]
    with pytest.raises(ValueError):
        inverse(f, Antiflag(a.p, f.sigma))
