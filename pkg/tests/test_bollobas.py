"""Bollobas-Riordan polynomials and the flag-boundary polynomial Xi."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpoly import bollobas as B
from gpoly import classical as C
from gpoly.fixtures import b2f, bare, l1, named, np3, p2, random_ribbon, random_rosette, x2
from gpoly.polyring import ONE, X, Y, Z, P, alpha, beta, parse, wset

FIX = named()
seeds = st.integers(0, 10 ** 6)


def test_br_examples():
    assert B.br(FIX["l1"]) == 1 + P(Y)
    assert B.br(FIX["x2"]) == parse("1 + 2*y + y^2*z^2")


def test_br_multivariate_examples():
    x, z = P(X), P(Z)
    assert B.br_multivariate(bare()) == x * z
    assert B.br_multivariate(FIX["l1"]) == x * z ** 2 * P(beta("e1")) + x * z
    b1, b2, b3 = (P(beta(f"e{i}")) for i in (1, 2, 3))
    one_face = B.br_multivariate(FIX["np3"]).evaluate({X: 1}).extract(Z, 1)
    assert one_face == b1 + b2 + b3 + b1 * b2 * b3


@pytest.mark.parametrize("name", sorted(FIX))
def test_tutte_specialization(name):
    assert B.tutte_specialization(FIX[name]) == C.tutte(FIX[name].graph)


@pytest.mark.parametrize("name", sorted(FIX))
def test_subset_equals_delcontr(name):
    R = FIX[name]
    assert B.br(R, "delcontr") == B.br(R)
    assert B.br_classical(R, "delcontr") == B.br_classical(R)


def test_bridge_rule():
    R = FIX["p2"]
    assert B.br(R) == P(X) * B.br(R.contract("e1"))


@given(seeds)
def test_planar_has_no_z(seed):
    R = random_ribbon(seed, max_v=5, max_e=6, connected=True)
    if R.genus() == 0:
        br = B.br(R)
        assert br.degree(Z) == 0
        assert br.substitute({Y: P(Y) - 1}) == C.tutte(R.graph)


@given(seeds)
def test_br_methods_agree(seed):
    R = random_ribbon(seed, max_v=5, max_e=6)
    assert B.br(R, "subset") == B.br(R, "delcontr")
    assert B.tutte_specialization(R) == C.tutte(R.graph)


@given(seeds)
def test_rosette_terminal(seed):
    R = random_rosette(seed)
    assert B.rosette_terminal(R) == B.br(R)


def test_xi_examples():
    assert B.xi(bare(2)) == P(wset(("f1", "f2")))
    empty_term = P(alpha("e1")) * P(alpha("e2")) * P(wset(("f1", "f2"))) * P(wset(("f3",)))
    full = B.xi(FIX["b2f"])
    assert full.filter_terms(lambda pw: beta("e1") not in pw and beta("e2") not in pw) == empty_term


@pytest.mark.parametrize("name", sorted(FIX))
def test_xi_semi_regular_recursion(name):
    R = FIX[name]
    X_ = B.xi(R)
    for e in R.graph.edge_ids():
        if R.graph.edge(e).is_loop:
            continue
        assert X_ == P(alpha(e)) * B.xi(R.delete(e)) + P(beta(e)) * B.xi(R.contract(e))


@pytest.mark.parametrize("R", [np3(), p2(), bare(2), l1(), b2f(), x2()], ids=str)
def test_xi_duality_examples(R):
    assert B.xi_duality(R)[2]


@given(seeds)
def test_xi_duality_random(seed):
    R = random_ribbon(seed, max_v=4, max_e=6, connected=True)
    lhs, rhs, ok = B.xi_duality(R)
    assert ok and lhs == rhs
