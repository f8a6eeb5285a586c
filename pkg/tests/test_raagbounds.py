import json
import random

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import GraphMatcher

from repcert.raagbounds import Graph, bounds, induced_c4, Interval


def from_nx(g):
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(pos[a], pos[b]) for a, b in g.edges()])


def has_induced_c4(g):
    return GraphMatcher(g, nx.cycle_graph(4)).subgraph_is_isomorphic()


def is_2d_oracle(g):
    """Join of a clique with >= 2 disjoint cliques  <=>  complement minus its
    isolated vertices is complete multipartite with >= 2 parts."""
    h = nx.complement(g)
    h.remove_nodes_from([v for v in list(h) if h.degree(v) == 0])
    if h.number_of_nodes() == 0:
        return False
    nodes = list(h)
    parts = []
    for v in nodes:
        for p in parts:
            if not h.has_edge(v, p[0]):
                p.append(v)
                break
        else:
            parts.append([v])
    for p in parts:
        for a in p:
            for b in p:
                if a != b and h.has_edge(a, b):
                    return False
    for i, p in enumerate(parts):
        for q in parts[i + 1:]:
            if any(not h.has_edge(a, b) for a in p for b in q):
                return False
    return len(parts) >= 2


def expected_value(g):
    n = g.number_of_nodes()
    if g.number_of_edges() == n * (n - 1) // 2:
        return 1
    if is_2d_oracle(g):
        return 2
    if has_induced_c4(g):
        return 4
    return 3


SMALL = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 4]


def test_atlas_has_all_small_graphs():
    assert len([g for g in SMALL if g.number_of_nodes() == 4]) == 11
    assert len([g for g in SMALL if g.number_of_nodes() == 4 and nx.is_connected(g)]) == 6


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"n{g.number_of_nodes()}_" +
                         "_".join(f"{a}{b}" for a, b in sorted(g.edges())))
def test_small_graph_corpus(g):
    r = bounds(from_nx(g))
    v = expected_value(g)
    assert r.char0.lo == r.char0.hi == v
    assert r.positive_char.lo == r.positive_char.hi == v


def test_named_examples():
    k3 = bounds(from_nx(nx.complete_graph(3)))
    assert k3.char0.exact and k3.char0.lo == 1
    p4 = bounds(from_nx(nx.path_graph(4)))
    assert (p4.char0.lo, p4.char0.hi, p4.positive_char.lo, p4.positive_char.hi) == (3, 3, 3, 3)
    c4 = bounds(from_nx(nx.cycle_graph(4)))
    assert (c4.char0.lo, c4.char0.hi, c4.positive_char.lo, c4.positive_char.hi) == (4, 4, 4, 4)
    c5 = bounds(from_nx(nx.cycle_graph(5)))
    assert (c5.char0.lo, c5.char0.hi) == (3, 3)
    assert c5.positive_char.lo == 3 and c5.positive_char.hi is None
    assert "CYCLE_C5PLUS" in [t for t, _ in c5.justifications]
    two_k2 = bounds(Graph(4, [(0, 1), (2, 3)]))
    assert two_k2.char0.exact and two_k2.char0.lo == 2
    assert "PROP_2D" in [t for t, _ in two_k2.justifications]
    p3_pt = bounds(Graph(4, [(0, 1), (1, 2)]))
    assert p3_pt.char0.exact and p3_pt.char0.lo == 3


def test_fallback_coxeter():
    # C4 plus a pendant: induced square, no other upper-bound rule applies
    g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    r = bounds(g)
    assert r.char0.lo == 4 and r.char0.hi == 10
    assert r.positive_char.hi is None
    assert "COXETER_2N" in [t for t, _ in r.justifications]


def test_induced_c4_examples():
    assert set(induced_c4(from_nx(nx.cycle_graph(4)))) == {0, 1, 2, 3}
    assert induced_c4(from_nx(nx.complete_graph(4))) is None
    assert induced_c4(from_nx(nx.cycle_graph(5))) is None


def test_induced_c4_matches_networkx_on_random_graphs():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 7)
        g = nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10 ** 6))
        quad = induced_c4(from_nx(g))
        assert (quad is not None) == has_induced_c4(g)
        if quad is not None:
            a, b, c, d = quad
            sub = g.subgraph(quad)
            assert nx.is_isomorphic(sub, nx.cycle_graph(4))
            assert all(g.has_edge(u, v) for u, v in ((a, b), (b, c), (c, d), (d, a)))


def test_isomorphism_invariance():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 7)
        g = nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10 ** 6))
        perm = list(range(n))
        rng.shuffle(perm)
        h = nx.relabel_nodes(g, dict(enumerate(perm)))
        r1, r2 = bounds(from_nx(g)), bounds(from_nx(h))
        assert r1.to_json() == r2.to_json()


def test_report_invariants():
    rng = random.Random(8)
    for _ in range(150):
        n = rng.randint(1, 7)
        g = from_nx(nx.gnp_random_graph(n, rng.random(), seed=rng.randint(0, 10 ** 6)))
        r = bounds(g)
        for iv in (r.char0, r.positive_char):
            assert iv.hi is None or iv.lo <= iv.hi
        assert r.justifications
        if induced_c4(g) is not None:
            assert r.char0.lo >= 4 and r.positive_char.lo >= 4


def test_parse_formats():
    g = Graph.parse("0-1\n1-2\n2-3")
    assert g.n == 4 and g.edges == ((0, 1), (1, 2), (2, 3))
    h = Graph.parse(json.dumps({"n": 5, "edges": [[0, 1]]}))
    assert h.n == 5 and h.edges == ((0, 1),)
    assert Graph.parse("n=3\n0-1").n == 3


def test_interval_json():
    assert Interval(3, None).to_json() == {"lo": 3, "hi": "unknown"}
