"""Boundaries, genus, duality, minors and double contraction on ribbon graphs."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpoly.errors import GraphError, UnsupportedOperation
from gpoly.fixtures import b2, bare, l1, named, np3, p2, random_ribbon, random_rosette, rosette, x2
from gpoly.graph import Graph
from gpoly.ribbon import RibbonGraph, fl, he

seeds = st.integers(0, 10 ** 6)


def test_boundary_counts():
    assert l1().bc() == 2
    assert np3().bc() == 1
    assert x2().bc() == 1
    (b,) = bare(2).boundaries()
    assert b.flags == ("f1", "f2")


def test_genus():
    assert np3().genus() == 1
    assert l1().genus() == 0
    assert x2().genus() == 1


def test_np3_dual():
    D = np3().dual()
    assert (D.V, D.E, D.bc(), D.genus()) == (1, 3, 2, 1)
    DD = D.dual()
    assert (DD.V, DD.E, DD.bc(), DD.genus()) == (2, 3, 1, 1)


def test_bridge_dual_is_loop():
    D = p2().dual()
    assert D.V == 1 and D.E == 1 and D.graph.edges[0].is_loop


def test_contract_keeps_genus():
    R = np3().contract("e3")
    assert R.is_rosette() and R.genus() == 1 and R.bc() == 1
    ends = [s for s in R.rotation[0][1] if s.kind == "e"]
    assert ends == [he("e1", "a"), he("e2", "a"), he("e1", "b"), he("e2", "b")]


def test_delete():
    R = b2().delete("e2")
    assert R.E == 1 and R.bc() == 1


def test_nice_crossing():
    assert x2().nice_crossing() == ("e1", "e2")
    assert rosette("e E f F").nice_crossing() is None
    assert rosette("e1 e2 a E1 A E2").nice_crossing() == ("e1", "e2")


def test_double_contract():
    assert x2().double_contract("e1", "e2").E == 0
    out = rosette("e1 e2 a E1 A E2").double_contract("e1", "e2")
    assert out.E == 1 and out.genus() == 0 and out.bc() == 2
    with pytest.raises(UnsupportedOperation):
        rosette("e E f F").double_contract("e", "f")


def test_rotation_must_cover_slots():
    g = Graph.build(["v"], [("e1", "v", "v")])
    with pytest.raises(GraphError):
        RibbonGraph.make(g, {"v": [he("e1", "a")]})
    with pytest.raises(GraphError):
        RibbonGraph.make(g, {"v": [he("e1", "a"), he("e1", "b"), fl("f9")]})


def test_rerooting_keeps_boundaries():
    for R in named().values():
        S = R.rerooted(1)
        assert sorted(len(b.slots) for b in S.boundaries()) == sorted(len(b.slots) for b in R.boundaries())
        assert S.genus() == R.genus()


@given(seeds)
def test_euler_every_subset(seed):
    R = random_ribbon(seed, max_v=5, max_e=6)
    G = R.graph
    for A in G.subsets():
        k, _, n = G.metrics(A)
        assert k - R.bc(A) + n == 2 * R.genus(A)


@given(seeds)
def test_contraction_preserves_bc(seed):
    R = random_ribbon(seed, max_v=5, max_e=6)
    for e in R.graph.edge_ids():
        if not R.graph.edge(e).is_loop:
            S = R.contract(e)
            assert S.bc() == R.bc() and S.genus() == R.genus()


@given(seeds)
def test_dual_involution(seed):
    R = random_ribbon(seed, max_v=5, max_e=6, connected=True)
    D = R.dual()
    assert (D.V, D.bc(), D.genus()) == (R.bc(), R.V, R.genus())
    DD = D.dual()
    assert (DD.V, DD.bc(), DD.genus()) == (R.V, R.bc(), R.genus())


@given(seeds)
def test_dual_swaps_contraction_and_deletion(seed):
    R = random_ribbon(seed, max_v=5, max_e=6, connected=True)
    D = R.dual()
    for e in R.graph.edge_ids():
        kind = R.graph.classify(e).value
        if kind == "regular":
            assert D.delete(e).bc() == R.contract(e).V
            assert D.delete(e).genus() == R.contract(e).genus()


@given(seeds)
def test_double_contraction_lowers_genus(seed):
    R = random_rosette(seed, max_e=7)
    for pair in R.nice_crossings():
        S = R.double_contract(*pair)
        assert S.genus() == R.genus() - 1 and S.bc() == R.bc() and S.E == R.E - 2
