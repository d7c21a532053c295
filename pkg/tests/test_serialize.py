import json
import random

import networkx as nx
import pytest

from hyperquad.correspondence import standard_frame
from hyperquad.relations import RelationLabel, build_graph, graph_from_adjacency
from hyperquad.serialize import decode_graph6, encode_graph6, export


def nx_graph6(adjacency):
    g = nx.Graph()
    g.add_nodes_from(range(len(adjacency)))
    g.add_edges_from((u, w) for u, row in enumerate(adjacency) for w in range(u + 1, len(adjacency)) if row >> w & 1)
    return nx.to_graph6_bytes(g, header=False).decode().strip()


def random_adjacency(v, rng, p=0.5):
    rows = [0] * v
    for u in range(v):
        for w in range(u + 1, v):
            if rng.random() < p:
                rows[u] |= 1 << w
                rows[w] |= 1 << u
    return rows


def test_small_known_strings():
    assert encode_graph6([]) == "?"
    assert encode_graph6([0]) == "@"
    # path 0-1-2: bits (0,1)=1, (0,2)=0, (1,2)=1 -> 101000 = 40
    assert encode_graph6([0b010, 0b101, 0b010]) == "Bg"


@pytest.mark.parametrize("v", [0, 1, 2, 3, 5, 7, 12, 62, 63, 64, 100, 300])
def test_against_networkx(v):
    rng = random.Random(v)
    adj = random_adjacency(v, rng)
    text = encode_graph6(adj)
    assert text == nx_graph6(adj)
    assert decode_graph6(text) == tuple(adj)


def test_n3_b2_string():
    g = build_graph(standard_frame(3), RelationLabel("B", 2))
    text = encode_graph6(g.adjacency)
    assert len(text) == 64
    assert text == nx_graph6(g.adjacency)
    assert decode_graph6(">>graph6<<" + text + "\n") == tuple(g.adjacency)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_round_trip_all_relation_graphs(n):
    f = standard_frame(n)
    for label in ("A1", "A2", "A3", "A4", "B1", "B2", "C1", "C2", "C3", "C4"):
        g = build_graph(f, RelationLabel.parse(label))
        text = export(g, "graph6")
        assert decode_graph6(text) == tuple(g.adjacency)
        assert export(build_graph(f, RelationLabel.parse(label)), "graph6") == text


@pytest.mark.parametrize("bad", ["", "Bo!", "B", "Bp", "Bop", "~?", "~~??"])
def test_decode_rejects(bad):
    with pytest.raises(ValueError):
        decode_graph6(bad)


def test_edges_and_json():
    g = build_graph(standard_frame(2), RelationLabel("A", 3))
    lines = export(g, "edges").splitlines()
    assert len(lines) == 6
    pairs = [tuple(map(int, ln.split())) for ln in lines]
    assert pairs == sorted(pairs) and all(u < w for u, w in pairs)
    doc = json.loads(export(g, "json"))
    assert doc["relation"] == "A3" and doc["vertex_count"] == 6 and doc["edge_count"] == 6
    assert [tuple(e) for e in doc["edges"]] == pairs
    assert len(doc["vertices"]) == 6
    with pytest.raises(ValueError):
        export(g, "dot")


def test_graph_from_adjacency_round_trip():
    adj = random_adjacency(40, random.Random(1), 0.3)
    g = graph_from_adjacency(adj)
    assert decode_graph6(export(g, "graph6")) == tuple(adj)
