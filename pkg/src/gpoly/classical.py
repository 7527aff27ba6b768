"""Commutative graph polynomials: Tutte family, Symanzik polynomials and their
harmonic-regulated and flag-categorified generalizations."""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .errors import GraphError, UnsupportedOperation
from .graph import EdgeKind, Graph
from .momentum import MomentumForm, conserve_flags, total_momentum
from .polyring import (ONE, ZERO, MPoly, P, Q, X, Y, alpha, beta, natural_key, poly_prod,
                       poly_sum, qset, qv, xi)

Weights = Mapping[str, MPoly]


# -- small helpers ---------------------------------------------------------------

def _prod_alpha(ids) -> MPoly:
    return poly_prod(P(alpha(e)) for e in ids)


def _prod_beta(ids) -> MPoly:
    return poly_prod(P(beta(e)) for e in ids)


def _complement(G: Graph, A) -> list[str]:
    s = set(A)
    return [e for e in G.edge_ids() if e not in s]


def vertex_weights(G: Graph) -> dict[str, MPoly]:
    """q_v on weighted vertices; unweighted vertices carry weight 0."""
    return {v: (P(qv(v)) if v in G.weighted else ZERO) for v in G.vertices}


def vertex_momenta(G: Graph) -> dict[str, dict[str, int]]:
    return {v: total_momentum(G.flags_at(v)) for v in G.sorted_vertices()}


def _component_momentum(G: Graph, comp) -> dict[str, int]:
    return total_momentum([f for f in G.flags if f.vertex in set(comp)])


def _pick(G: Graph, order: Sequence[str] | None, ok: Callable[[str], bool]) -> str | None:
    ids = G.edge_ids() if order is None else [e for e in order if any(x.id == e for x in G.edges)]
    for e in ids:
        if ok(e):
            return e
    return None


def _check_method(method: str, allowed) -> None:
    if method not in allowed:
        raise UnsupportedOperation(f"method {method!r} not available here (use one of {', '.join(allowed)})")


# -- Tutte ---------------------------------------------------------------------------

def tutte(G: Graph, method: str = "subset", order: Sequence[str] | None = None,
          limit: int | None = None) -> MPoly:
    """T_G(x, y) by rank-nullity expansion or by deletion/contraction."""
    _check_method(method, ("subset", "delcontr"))
    if method == "subset":
        rE = G.V - G.k()
        xm, ym = P(X) - 1, P(Y) - 1
        acc = []
        for A in G.subsets("all_subsets", limit):
            _, r, n = G.metrics(A)
            acc.append(xm ** (rE - r) * ym ** n)
        return poly_sum(acc)
    G.guard(limit)
    memo: dict = {}

    def rec(H: Graph) -> MPoly:
        key = H.canonical_key()
        if key in memo:
            return memo[key]
        e = _pick(H, order, lambda x: H.classify(x) is EdgeKind.REGULAR)
        if e is None:
            m = sum(1 for x in H.edges if H.classify(x.id) is EdgeKind.BRIDGE)
            n = sum(1 for x in H.edges if x.is_loop)
            out = P(X) ** m * P(Y) ** n
        else:
            out = rec(H.delete(e)) + rec(H.contract(e))
        memo[key] = out
        return out

    return rec(G)


# -- multivariate Tutte and forests ----------------------------------------------

def z_multivariate(G: Graph, method: str = "subset", order: Sequence[str] | None = None,
                   limit: int | None = None) -> MPoly:
    """Z_G(q, beta) = sum_A q^k(A) prod_{e in A} beta_e."""
    _check_method(method, ("subset", "delcontr"))
    if method == "subset":
        return poly_sum(P(Q) ** G.k(A) * _prod_beta(A) for A in G.subsets("all_subsets", limit))
    G.guard(limit)
    memo: dict = {}

    def rec(H: Graph) -> MPoly:
        key = H.canonical_key()
        if key in memo:
            return memo[key]
        e = _pick(H, order, lambda x: True)
        if e is None:
            out = P(Q) ** H.V
        else:
            out = rec(H.delete(e)) + P(beta(e)) * rec(H.contract(e))
        memo[key] = out
        return out

    return rec(G)


def forest_poly(G: Graph, limit: int | None = None) -> MPoly:
    return poly_sum(_prod_beta(A) * P(Q) ** G.k(A) for A in G.subsets("spanning_forests", limit))


# -- first and second Symanzik -------------------------------------------------------

def symanzik_u(G: Graph, method: str = "subset", order: Sequence[str] | None = None,
               limit: int | None = None) -> MPoly:
    """U_G = sum over spanning trees of prod_{e not in T} alpha_e.

    For a disconnected graph this is the product over components, i.e. the
    sum over maximal spanning forests.
    """
    _check_method(method, ("subset", "delcontr", "matrix"))
    if method == "subset":
        return poly_sum(_prod_alpha(_complement(G, T)) for T in G.subsets("max_forests", limit))
    if method == "matrix":
        from .matrix import symanzik_u_via_minor
        return symanzik_u_via_minor(G)
    G.guard(limit)
    memo: dict = {}

    def rec(H: Graph) -> MPoly:
        key = H.canonical_key()
        if key in memo:
            return memo[key]
        e = _pick(H, order, lambda x: not H.edge(x).is_loop)
        if e is None:
            out = _prod_alpha(x.id for x in H.edges)
        elif H.classify(e) is EdgeKind.BRIDGE:
            out = rec(H.contract(e))
        else:
            out = rec(H.contract(e)) + P(alpha(e)) * rec(H.delete(e))
        memo[key] = out
        return out

    return rec(G)


def _require_connected(G: Graph) -> None:
    if not G.is_connected():
        raise UnsupportedOperation("operation requires a connected graph")


def _require_momenta(G: Graph) -> None:
    if not G.flags:
        raise GraphError("no flags carry momenta")


def symanzik_v(G: Graph, variant: str = "symmetric", limit: int | None = None) -> MomentumForm:
    """Second Symanzik polynomial as a quadratic form in the flag momenta.

    ``symmetric``: -1/2 sum_{v != v'} p_v.p_v' over 2-trees separating v, v'.
    ``conserved``: sum over 2-trees of p_{G1}^2, reduced by momentum conservation.
    """
    _require_connected(G)
    _require_momenta(G)
    pv = vertex_momenta(G)
    out = MomentumForm.zero()
    for T2 in G.subsets("two_forests", limit):
        weight = _prod_alpha(_complement(G, T2))
        comps = G.components(T2)
        if variant == "conserved":
            out = out + MomentumForm.square(_component_momentum(G, comps[0]), weight)
        elif variant == "symmetric":
            a, b = comps
            for v in a:
                for w in b:
                    # the unordered pair counted twice cancels the 1/2
                    out = out - MomentumForm.bilinear(pv[v], pv[w], weight)
        else:
            raise ValueError(f"unknown variant {variant!r}")
    if variant == "conserved":
        out = conserve_flags(out, G.flags)
    return out


# -- harmonic-regulated Symanzik polynomials ---------------------------------------

def _merged(weights: Weights, keep: str, gone: str) -> dict[str, MPoly]:
    w = {v: c for v, c in weights.items() if v != gone}
    w[keep] = weights[keep] + weights[gone]
    return w


def gen_u(G: Graph, method: str = "subset", weights: Weights | None = None,
          order: Sequence[str] | None = None, limit: int | None = None) -> MPoly:
    """Generalized first polynomial: sum over forests of prod_{e not in F} alpha_e prod_C q_C."""
    _check_method(method, ("subset", "delcontr", "matrix"))
    w = vertex_weights(G) if weights is None else dict(weights)
    if method == "matrix":
        from .matrix import determinant, q_matrix
        return determinant(q_matrix(G, w))
    if method == "subset":
        acc = []
        for F in G.subsets("spanning_forests", limit):
            qc = poly_prod(poly_sum(w[v] for v in C) for C in G.components(F))
            acc.append(_prod_alpha(_complement(G, F)) * qc)
        return poly_sum(acc)
    G.guard(limit)
    memo: dict = {}

    def rec(H: Graph, wt: dict[str, MPoly]) -> MPoly:
        co = H.canonical_order()
        key = (H.canonical_key(), tuple(wt[v] for v in sorted(co, key=co.get)))
        if key in memo:
            return memo[key]
        e = _pick(H, order, lambda x: not H.edge(x).is_loop)
        if e is None:
            out = _prod_alpha(x.id for x in H.edges) * poly_prod(wt[v] for v in H.sorted_vertices())
        else:
            keep, gone = H.merge_target(e)
            out = P(alpha(e)) * rec(H.delete(e), wt) + rec(H.contract(e), _merged(wt, keep, gone))
        memo[key] = out
        return out

    return rec(G, w)


def gen_v(G: Graph, method: str = "subset", weights: Weights | None = None,
          limit: int | None = None) -> MomentumForm:
    """Generalized second polynomial: sum over forests, sum_C p_C^2 prod_{C' != C} q_C'."""
    _check_method(method, ("subset", "matrix"))
    w = vertex_weights(G) if weights is None else dict(weights)
    if method == "matrix":
        from .matrix import gen_v_via_adjugate
        return gen_v_via_adjugate(G, w)
    out = MomentumForm.zero()
    for F in G.subsets("spanning_forests", limit):
        a = _prod_alpha(_complement(G, F))
        comps = G.components(F)
        qs = [poly_sum(w[v] for v in C) for C in comps]
        for i, C in enumerate(comps):
            rest = poly_prod(q for j, q in enumerate(qs) if j != i)
            out = out + MomentumForm.square(_component_momentum(G, C), a * rest)
    return out


def _all_weighted(G: Graph) -> Graph:
    return Graph(G.vertices, G.edges, G.flags, frozenset(G.vertices), G.name)


def recover_u(G: Graph, vertex: str | None = None, method: str = "subset") -> MPoly:
    """d(gen_u)/dq_v at q = 0; independent of v and equal to U_G."""
    _require_connected(G)
    H = _all_weighted(G)
    v = H.sorted_vertices()[0] if vertex is None else vertex
    if v not in H.vertices:
        raise GraphError(f"unknown vertex {v!r}")
    U = gen_u(H, method)
    zero = {qv(x): 0 for x in H.vertices}
    return U.derive(qv(v)).substitute(zero)


def recover_v(G: Graph, method: str = "subset") -> MomentumForm:
    """-1/2 sum_{v != v'} p_v.p_v' d^2(gen_u)/dq_v dq_v' at q = 0."""
    _require_connected(G)
    H = _all_weighted(G)
    U = gen_u(H, method)
    zero = {qv(x): 0 for x in H.vertices}
    pv = vertex_momenta(H)
    vs = H.sorted_vertices()
    out = MomentumForm.zero()
    for i, v in enumerate(vs):
        for w in vs[i + 1:]:
            c = U.derive(qv(v)).derive(qv(w)).substitute(zero)
            out = out - MomentumForm.bilinear(pv[v], pv[w], c)
    return out


# -- flag-categorified polynomials ---------------------------------------------------

def _component_flags(G: Graph, comp) -> tuple[str, ...]:
    s = set(comp)
    return tuple(sorted((f.id for f in G.flags if f.vertex in s), key=natural_key))


def _require_flagged(G: Graph) -> None:
    have = {f.vertex for f in G.flags}
    bare = [v for v in G.sorted_vertices() if v not in have]
    if bare:
        raise UnsupportedOperation(
            f"vertices without flags ({', '.join(bare)}) have no flag-set variable; "
            "attach a flag to every vertex (Graph.with_flags)")


def w_categorified(G: Graph, method: str = "subset", order: Sequence[str] | None = None,
                   limit: int | None = None) -> MPoly:
    """W_G(beta, q_I) = sum_A prod_{e in A} beta_e prod_components q_{I_n}."""
    _check_method(method, ("subset", "delcontr"))
    _require_flagged(G)
    if method == "subset":
        return poly_sum(_prod_beta(A) * poly_prod(P(qset(_component_flags(G, C))) for C in G.components(A))
                        for A in G.subsets("all_subsets", limit))
    G.guard(limit)
    memo: dict = {}

    def rec(H: Graph) -> MPoly:
        key = H.canonical_key()
        if key in memo:
            return memo[key]
        e = _pick(H, order, lambda x: True)
        if e is None:
            out = poly_prod(P(qset(_component_flags(H, [v]))) for v in H.sorted_vertices())
        else:
            out = P(beta(e)) * rec(H.contract(e)) + rec(H.delete(e))
        memo[key] = out
        return out

    return rec(G)


def upsilon(G: Graph, limit: int | None = None) -> MPoly:
    """sum_A prod_{e not in A} alpha_e prod_components (sum of singleton flag variables)."""
    acc = []
    for A in G.subsets("all_subsets", limit):
        qc = poly_prod(poly_sum(P(qset([f])) for f in _component_flags(G, C)) for C in G.components(A))
        acc.append(_prod_alpha(_complement(G, A)) * qc)
    return poly_sum(acc)


def noble_welsh(G: Graph, flag_weights: Mapping[str, int], limit: int | None = None) -> MPoly:
    """W_G(xi, y) with vertex weight = sum of the weights of its flags."""
    for f in G.flags:
        w = flag_weights.get(f.id)
        if w is None or int(w) != w or w <= 0:
            raise GraphError(f"flag {f.id} needs a positive integer weight, got {w!r}")
    ym = P(Y) - 1
    acc = []
    for A in G.subsets("all_subsets", limit):
        _, _, n = G.metrics(A)
        mono = poly_prod(P(xi(sum(flag_weights[f] for f in _component_flags(G, C))))
                         for C in G.components(A))
        acc.append(ym ** n * mono)
    return poly_sum(acc)


# -- substitution maps between the categorified polynomials -----------------------

def _qset_atoms(p: MPoly):
    return [a for a in p.atoms() if a.kind.name == "QSET"]


def w_to_z(Wp: MPoly) -> MPoly:
    return Wp.substitute({a: P(Q) for a in _qset_atoms(Wp)})


def clear_beta(p: MPoly, ids: Sequence[str]) -> MPoly:
    """(prod_e alpha_e) * p(beta_e = 1/alpha_e) for p multilinear in the beta_e."""
    def term(powers, c):
        bs = set()
        rest = {}
        for a, e in powers.items():
            if a.kind.name == "BETA":
                if e > 1:
                    raise ValueError("clearing needs beta-exponents at most one")
                bs.add(a.payload)
            else:
                rest[a] = e
        return MPoly.monomial(rest, c) * _prod_alpha(e for e in ids if e not in bs)
    return p.map_terms(term)


def w_to_upsilon(Wp: MPoly, G: Graph) -> MPoly:
    """(prod alpha) W(beta = 1/alpha, q_I = sum_{i in I} q_i), computed without fractions."""
    sub = {a: poly_sum(P(qset([f])) for f in a.payload) for a in _qset_atoms(Wp)}
    return clear_beta(Wp.substitute(sub), G.edge_ids())


def truncate_max_alpha(p: MPoly) -> MPoly:
    """Keep, for each monomial in the non-alpha atoms, only the terms of maximal alpha-degree."""
    best: dict[tuple, int] = {}

    def split(powers):
        other = tuple(sorted(((a.sort_key, e) for a, e in powers.items() if a.kind.name != "ALPHA")))
        deg = sum(e for a, e in powers.items() if a.kind.name == "ALPHA")
        return other, deg

    for powers, _ in p.terms():
        o, d = split(powers)
        best[o] = max(best.get(o, -1), d)
    return p.filter_terms(lambda pw: split(pw)[1] == best[split(pw)[0]])


def truncate_min_beta(p: MPoly, var=Q) -> MPoly:
    """Keep, at each fixed degree in ``var``, the terms of minimal beta-degree."""
    best: dict[int, int] = {}

    def split(powers):
        return powers.get(var, 0), sum(e for a, e in powers.items() if a.kind.name == "BETA")

    for powers, _ in p.terms():
        k, d = split(powers)
        best[k] = min(best.get(k, 10 ** 9), d)
    return p.filter_terms(lambda pw: split(pw)[1] == best[split(pw)[0]])


def forest_to_u(Fp: MPoly, G: Graph) -> MPoly:
    """Term linear in q, times prod alpha with beta = 1/alpha."""
    return clear_beta(Fp.extract(Q, 1), G.edge_ids())


def gen_u_to_u(Up: MPoly, G: Graph) -> MPoly:
    """Coefficient of the term linear in the flag variables (any single one)."""
    f = G.sorted_flags()[0].id
    return Up.extract(qset([f]), 1).substitute({a: 0 for a in _qset_atoms(Up)})


def diagram(G: Graph, limit: int | None = None) -> dict[str, MPoly]:
    """Both routes from W to U; each intermediate is returned for inspection."""
    H = G.with_flags()
    Wp = w_categorified(H, limit=limit)
    ups = w_to_upsilon(Wp, H)
    gu = truncate_max_alpha(ups)
    u_top = gen_u_to_u(gu, H)
    z = w_to_z(Wp)
    f = truncate_min_beta(z)
    u_bottom = forest_to_u(f, H)
    return {"W": Wp, "Upsilon": ups, "gen_u": gu, "U_top": u_top,
            "Z": z, "F": f, "U_bottom": u_bottom}
