"""Determinant, Pfaffian and adjugate oracles, and the graph matrices built on them."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpoly import classical as C
from gpoly import matrix as M
from gpoly.errors import UnsupportedOperation
from gpoly.fixtures import b2, b2f, bare, c3, l1, named, p2, random_graph
from gpoly.graph import Graph
from gpoly.momentum import MomentumForm
from gpoly.polyring import ONE, ZERO, MPoly, P, alpha, beta, qv

a, b, c, d = (P(alpha(f"e{i}")) for i in range(1, 5))
FIX = {k: r.graph for k, r in named().items()}
seeds = st.integers(0, 10 ** 6)

small = st.builds(lambda k, i, j: k * P(alpha(f"e{i}")) + j, st.integers(-2, 2), st.integers(1, 3),
                  st.integers(-2, 2))


def test_two_by_two():
    q = P(qv("v"))
    m = M.SymMatrix([[a, -1], [1, q]])
    for method in ("expansion", "bareiss", "auto"):
        assert M.determinant(m, method) == a * q + 1
    assert M.determinant(M.SymMatrix.identity(5)) == ONE


def test_pfaffian_examples():
    assert M.pfaffian(M.SymMatrix([[0, a], [-a, 0]], antisymmetric=True)) == a
    m = M.SymMatrix([[0, a, 0, 0], [-a, 0, 0, 0], [0, 0, 0, b], [0, 0, -b, 0]], antisymmetric=True)
    assert M.pfaffian(m) == a * b
    with pytest.raises(UnsupportedOperation):
        M.pfaffian(M.SymMatrix([[0]], antisymmetric=True))
    with pytest.raises(ValueError):
        M.SymMatrix([[0, a], [a, 0]], antisymmetric=True)


@settings(max_examples=50)
@given(st.lists(small, min_size=15, max_size=15))
def test_det_is_pfaffian_squared(entries):
    n = 6
    rows = [[ZERO] * n for _ in range(n)]
    it = iter(entries)
    for i in range(n):
        for j in range(i + 1, n):
            x = next(it)
            rows[i][j], rows[j][i] = x, -x
    m = M.SymMatrix(rows, antisymmetric=True)
    assert M.determinant(m, "expansion") == M.pfaffian(m) ** 2
    assert M.determinant(m, "bareiss") == M.pfaffian(m) ** 2


@settings(max_examples=40)
@given(st.lists(small, min_size=16, max_size=16))
def test_adjugate_identity(entries):
    m = M.SymMatrix([entries[4 * i:4 * i + 4] for i in range(4)])
    det = M.determinant(m)
    prod = m @ M.adjugate(m)
    assert prod == M.SymMatrix.identity(4).scale(det)


def test_q_matrix_examples():
    qu, qv_ = P(qv("u")), P(qv("v"))
    Q = M.q_matrix(FIX["b2"])
    assert [Q[i, i] for i in range(4)] == [a, b, qu, qv_]
    assert M.determinant(Q) == a * b * qu * qv_ + (a + b) * (qu + qv_)
    assert M.q_matrix(FIX["l1"]) == M.SymMatrix.diag([a, qv_])
    assert M.determinant(M.q_matrix(bare().graph)) == qv_


def test_adjugate_route_examples():
    assert M.gen_v_via_adjugate(bare(1).graph) == MomentumForm.square({"f1": 1})
    assert M.gen_v_via_adjugate(FIX["b2f"]) == C.gen_v(FIX["b2f"])


def test_schrodinger():
    for name in ("b2", "c3", "b2f", "np3"):
        assert M.schrodinger_check(FIX[name])[1], name
    H, ok = M.schrodinger_check(Graph.build(["a", "b"]))
    assert ok and H == M.SymMatrix.diag([P(qv("a")), P(qv("b"))])


def test_tree_matrix_minor():
    want = P(beta("e1")) * P(beta("e2")) + P(beta("e1")) * P(beta("e3")) + P(beta("e2")) * P(beta("e3"))
    for root in FIX["c3"].vertices:
        assert M.tree_matrix_minor(FIX["c3"], root) == want
        assert M.symanzik_u_via_minor(FIX["c3"], root) == a + b + P(alpha("e3"))
    assert M.tree_matrix_minor(FIX["p2"]) == P(beta("e1"))
    assert M.symanzik_u_via_minor(FIX["p2"]) == ONE


@given(seeds)
def test_matrix_routes(seed):
    G = random_graph(seed)
    assert C.gen_u(G, "subset") == M.determinant(M.q_matrix(G))
    assert C.gen_v(G, "subset") == M.gen_v_via_adjugate(G)
    assert C.symanzik_u(G) == M.symanzik_u_via_minor(G)
    Q = M.q_matrix(G)
    assert M.det_expansion(Q) == M.det_bareiss(Q)
