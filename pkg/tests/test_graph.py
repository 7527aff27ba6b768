"""Graph minors, metrics and subset families."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpoly.errors import GraphError, ResourceLimitError
from gpoly.fixtures import b2, b2f, c3, l1, p2, random_graph
from gpoly.graph import EdgeKind, Graph

seeds = st.integers(0, 10 ** 6)


def test_classify():
    assert p2().graph.classify("e1") is EdgeKind.BRIDGE
    assert l1().graph.classify("e1") is EdgeKind.SELF_LOOP
    assert all(c3().graph.classify(e) is EdgeKind.REGULAR for e in ("e1", "e2", "e3"))


def test_delete():
    g = b2().graph.delete("e1")
    assert (g.V, g.E, g.k()) == (2, 1, 1)
    h = c3().graph
    assert h.delete("e1").k() == 1 and h.delete("e1").E == 2
    for e in ("e1", "e2", "e3"):
        h = h.delete(e)
    assert h.k() == 3


def test_contract_merges_flags_and_weights():
    g = b2f().graph.contract("e1")
    assert g.vertices == ("u",)
    assert [e.id for e in g.edges] == ["e2"] and g.edges[0].is_loop
    assert sorted(f.vertex for f in g.flags) == ["u", "u", "u"]


def test_contraction_adds_vertex_weights():
    from gpoly.classical import _merged, gen_u, vertex_weights
    from gpoly.polyring import P, alpha, qv
    G = b2f().graph
    w = _merged(vertex_weights(G), *G.merge_target("e1"))
    assert w == {"u": P(qv("u")) + P(qv("v"))}
    # weights follow the recursion U = alpha_e U(G-e) + U(G/e)
    assert gen_u(G) == P(alpha("e1")) * gen_u(G.delete("e1")) + gen_u(G.contract("e1"), weights=w)


def test_contract_loop_and_triangle():
    g = l1().graph.contract("e1")
    assert (g.V, g.E) == (1, 0)
    t = c3().graph.contract("e1")
    assert (t.V, t.E) == (2, 2)
    assert all(not e.is_loop for e in t.edges)


def test_metrics():
    g = c3().graph
    assert g.metrics() == (1, 2, 1)
    assert g.metrics(()) == (3, 0, 0)
    assert b2().graph.metrics() == (1, 1, 1)


def test_families():
    assert list(c3().graph.subsets("spanning_trees")) == [("e1", "e2"), ("e1", "e3"), ("e2", "e3")]
    assert list(b2().graph.subsets("spanning_forests")) == [(), ("e1",), ("e2",)]
    assert list(b2().graph.subsets("two_forests")) == [()]


def test_family_errors():
    disc = Graph.build(["a", "b"])
    with pytest.raises(GraphError):
        disc.subsets("spanning_trees")
    big = Graph.build(["v"], [(f"e{i}", "v", "v") for i in range(30)])
    with pytest.raises(ResourceLimitError):
        big.subsets("all_subsets")
    with pytest.raises(ValueError):
        c3().graph.subsets("cycles")


def test_bad_construction():
    with pytest.raises(GraphError):
        Graph.build(["u"], [("e1", "u", "w")])
    with pytest.raises(GraphError):
        Graph.build(["u", "v"], [("e1", "u", "v"), ("e1", "v", "u")])


@given(seeds)
def test_rank_nullity(seed):
    g = random_graph(seed)
    for A in list(g.subsets())[:40]:
        k, r, n = g.metrics(A)
        assert r + n == len(A) and k + r == g.V


@given(seeds, st.data())
def test_minors_commute(seed, data):
    g = random_graph(seed)
    if g.E < 2:
        return
    e, f = data.draw(st.permutations(g.edge_ids()))[:2]
    if g.edge(f).is_loop:
        return
    assert g.delete(e).contract(f) == g.contract(f).delete(e)


@given(seeds)
def test_canonical_key_ignores_edge_order(seed):
    g = random_graph(seed)
    h = Graph(g.vertices, tuple(reversed(g.edges)), g.flags, g.weighted, g.name)
    assert g.canonical_key() == h.canonical_key()
