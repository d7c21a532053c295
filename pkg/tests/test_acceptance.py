"""Acceptance criteria, one test each, with their runtime limits.

Every test records a PASS/FAIL line; conftest.py prints them at the end of the
run. ``python3 tests/test_acceptance.py`` prints them directly.
"""

import time
from itertools import combinations

import numpy as np
import pytest

from hyperquad.correspondence import antiflags, forward, inverse, nonsingular_points, standard_frame
from hyperquad.gf2 import contains
from hyperquad.relations import RelationLabel, build_graph, label_matrix, published_b1_params, srg_params
from hyperquad.serialize import decode_graph6, export
from hyperquad.verify import verify_bijection, verify_crossing, verify_facts, verify_theorem

RESULTS: list[str] = []


def printed_degrees(n):
    """Degree lines for A1..A4 (and C1..C4), written out literally."""
    return (
        (2 ** (n - 1) - 1) * 2 ** (n - 1),
        (2 ** (n - 1) - 1) * 2 ** (n - 2),
        2 * (2 ** (n - 1) - 1),
        (2 ** (n - 1) - 1) * (2 ** (n - 2) - 1),
    )


@pytest.fixture
def criterion(request):
    name = request.node.name.removeprefix("test_")
    record = {"detail": ""}
    start = time.perf_counter()
    failed = True
    try:
        yield record
        failed = False
    finally:
        elapsed = time.perf_counter() - start
        limit = record.get("limit")
        over = limit is not None and elapsed >= limit
        mark = "FAIL" if failed or over else "PASS"
        extra = f" (over {limit} s)" if over else ""
        RESULTS.append(f"{mark}  {name}  {elapsed:.2f} s{extra}  {record['detail']}")
        if over and not failed:
            pytest.fail(f"{name} took {elapsed:.2f} s, limit {limit} s")


def test_c1_cardinality(criterion):
    criterion["limit"] = 1.0
    got = []
    for n in range(2, 7):
        f = standard_frame(n)
        pts, afs = len(nonsingular_points(f)), len(antiflags(f))
        assert pts == afs == (2**n - 1) * 2 ** (n - 1)
        got.append(pts)
    assert got == [6, 28, 120, 496, 2016]
    criterion["detail"] = f"counts {got}"


def test_c2_bijection(criterion):
    criterion["limit"] = 1.0
    for n in range(2, 6):
        f = standard_frame(n)
        pts, afs = nonsingular_points(f), antiflags(f)
        images = [forward(f, x) for x in pts]
        assert set(images) == set(afs) and len(set(images)) == len(afs)
        assert all(inverse(f, a) == x for a, x in zip(images, pts))
        assert all(forward(f, inverse(f, a)) == a for a in afs)
    criterion["detail"] = "two-sided inverse, n = 2..5"


def test_c3_antiflag_property(criterion):
    total = 0
    for n in range(2, 6):
        f = standard_frame(n)
        for x in nonsingular_points(f):
            a = forward(f, x)
            assert a.p.dim == 1 and a.h.dim == n - 1
            assert a.h <= f.sigma and a.p <= f.sigma
            assert not contains(a.h, a.p.vector)
            total += 1
    criterion["detail"] = f"{total} images, none incident"


def test_c4_crossing_line(criterion):
    criterion["limit"] = 10.0
    checked = 0
    for n in (2, 3, 4):
        rep = verify_crossing(n)
        assert rep.ok, rep.to_text()
        checked += rep.counts["exterior_singular"]
    criterion["detail"] = f"{checked} exterior singular points, brute force over all lines"


def test_c5_theorem(criterion):
    criterion["limit"] = 60.0
    pairs = []
    for n in (2, 3, 4):
        rep = verify_theorem(n)
        assert rep.ok, rep.to_text()
        pairs.append(rep.counts["pairs"])
    assert pairs == [15, 378, 7140]
    rep = verify_theorem(5, sample=10**6, seed=20240101)
    assert rep.ok and rep.counts["pairs"] == 10**6, rep.to_text()
    criterion["detail"] = f"exhaustive pairs {pairs}, 10^6 sampled at n = 5, 0 mismatches"


def test_c6_degree_tables(criterion):
    for n in (3, 4):
        f = standard_frame(n)
        want = np.array(printed_degrees(n))
        for fam in "AC":
            mat = label_matrix(f, fam)
            table = np.stack([(mat == i).sum(axis=1) for i in range(1, 5)], axis=1)
            assert (table == want).all(), (n, fam)
    criterion["detail"] = "every vertex, n = 3 and 4, families A and C"


def test_c7_facts(criterion):
    for n in (2, 3):
        rep = verify_facts(n)
        assert rep.ok, rep.to_text()
        # n <= 3 enumerates every (n-1)-dim totally singular subspace
        assert rep.counts["ts_subspaces_checked"] == (9, 105)[n - 2]
    criterion["detail"] = "points, tangent lines and all (n-1)-dim t.s. subspaces"


def brute_srg(adjacency):
    v = len(adjacency)
    nbrs = [{w for w in range(v) if adjacency[u] >> w & 1} for u in range(v)]
    ks = {len(s) for s in nbrs}
    lam, mu = set(), set()
    for u, w in combinations(range(v), 2):
        (lam if w in nbrs[u] else mu).add(len(nbrs[u] & nbrs[w]))
    assert len(ks) == len(lam) == len(mu) == 1
    return v, ks.pop(), lam.pop(), mu.pop()


def test_c8_srg(criterion):
    criterion["limit"] = 30.0
    want_b2 = {3: (28, 15, 6, 10), 4: (120, 63, 30, 36)}
    notes = []
    for n in (3, 4):
        f = standard_frame(n)
        for label in ("B1", "B2"):
            g = build_graph(f, RelationLabel.parse(label))
            params = srg_params(g).as_tuple()
            assert params == brute_srg(g.adjacency)
            v, k, lam, mu = params
            assert k * (k - lam - 1) == (v - k - 1) * mu
            if label == "B2":
                assert params == want_b2[n]
            else:
                quoted = published_b1_params(n)
                assert (v, k) == quoted[:2]
                relation = "match" if (lam, mu) == quoted[2:] else (
                    "interchanged" if (mu, lam) == quoted[2:] else "differ")
                notes.append(f"n={n} B1 ({lam},{mu}) vs printed {quoted[2:]}: {relation}")
    criterion["detail"] = "; ".join(notes)


def test_c9_graph6(criterion):
    count = 0
    for n in (2, 3, 4):
        f = standard_frame(n)
        for fam, size in (("A", 4), ("B", 2), ("C", 4)):
            for i in range(1, size + 1):
                label = RelationLabel(fam, i)
                first = export(build_graph(f, label), "graph6")
                second = export(build_graph(f, label), "graph6")
                assert first == second
                assert decode_graph6(first) == tuple(build_graph(f, label).adjacency)
                count += 1
    criterion["detail"] = f"{count} graphs round-tripped, byte-identical reruns"


if __name__ == "__main__":
    import sys

    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
