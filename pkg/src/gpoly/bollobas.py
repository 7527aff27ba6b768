"""Bollobas-Riordan polynomial, its multivariate form, and the boundary-flag polynomial Xi."""

from __future__ import annotations

from .errors import UnsupportedOperation
from .graph import EdgeKind
from .polyring import MPoly, P, X, Y, Z, alpha, beta, poly_prod, poly_sum, wset
from .ribbon import RibbonGraph


def _check_method(method, allowed):
    if method not in allowed:
        raise UnsupportedOperation(f"method {method!r} not available here (use one of {', '.join(allowed)})")


def br_subset_terms(R: RibbonGraph, limit: int | None = None):
    """(H, k, r, n, bc) for every spanning subset H."""
    G = R.graph
    for H in G.subsets("all_subsets", limit):
        k, r, n = G.metrics(H)
        yield H, k, r, n, R.bc(H)


def br(R: RibbonGraph, method: str = "subset", limit: int | None = None) -> MPoly:
    """R_G(x, y, z) = sum_H (x-1)^{r(G)-r(H)} y^{n(H)} z^{k(H)-bc(H)+n(H)}."""
    _check_method(method, ("subset", "delcontr"))
    if method == "subset":
        rG = R.V - R.graph.k()
        xm = P(X) - 1
        return poly_sum(xm ** (rG - r) * P(Y) ** n * P(Z) ** (k - bc + n)
                        for _, k, r, n, bc in br_subset_terms(R, limit))
    R.graph.guard(limit)
    memo: dict = {}

    def rec(S: RibbonGraph) -> MPoly:
        key = S.canonical_key()
        if key in memo:
            return memo[key]
        G = S.graph
        e = next((x for x in G.edge_ids() if not G.edge(x).is_loop), None)
        if e is None:
            # disjoint rosettes: sum_H y^|H| z^{2g(H)}
            out = br(S, "subset")
        elif G.classify(e) is EdgeKind.BRIDGE:
            out = P(X) * rec(S.contract(e))
        else:
            out = rec(S.delete(e)) + rec(S.contract(e))
        memo[key] = out
        return out

    return rec(R)


def br_classical(R: RibbonGraph, method: str = "subset", limit: int | None = None) -> MPoly:
    """Original normalization sum_H x^{r(G)-r(H)} ..., i.e. R(x + 1, y, z)."""
    return br(R, method, limit).substitute({X: P(X) + 1})


def tutte_specialization(R: RibbonGraph, method: str = "subset") -> MPoly:
    """R~(x-1, y-1, 1) for the classical normalization R~; equals the Tutte polynomial."""
    return br_classical(R, method).substitute({X: P(X) - 1, Y: P(Y) - 1, Z: 1})


def rosette_terminal(R: RibbonGraph) -> MPoly:
    """sum_H y^{E(H)} z^{2 g(H)} for a rosette."""
    if not R.is_rosette():
        raise UnsupportedOperation("terminal form is defined on rosettes")
    return poly_sum(P(Y) ** len(H) * P(Z) ** (2 * R.genus(H)) for H in R.graph.subsets("all_subsets"))


def br_multivariate(R: RibbonGraph, limit: int | None = None) -> MPoly:
    """Z_G(x, beta, z) = sum_H x^{k(H)} prod_{e in H} beta_e z^{bc(H)}."""
    return poly_sum(P(X) ** k * poly_prod(P(beta(e)) for e in H) * P(Z) ** bc
                    for H, k, _, _, bc in br_subset_terms(R, limit))


def boundary_flag_sets(R: RibbonGraph, A) -> list[tuple[str, ...]]:
    return [b.cyclic_flags for b in R.boundaries(A)]


def xi(R: RibbonGraph, limit: int | None = None) -> MPoly:
    """Xi_G = sum_A prod_{e not in A} alpha_e prod_{e in A} beta_e prod_boundaries w_{I_n}."""
    ids = R.graph.edge_ids()
    acc = []
    for A in R.graph.subsets("all_subsets", limit):
        sA = set(A)
        edges = poly_prod(P(beta(e)) if e in sA else P(alpha(e)) for e in ids)
        acc.append(edges * poly_prod(P(wset(I)) for I in boundary_flag_sets(R, A)))
    return poly_sum(acc)


def swap_alpha_beta(p: MPoly, ids) -> MPoly:
    sub = {}
    for e in ids:
        sub[alpha(e)] = P(beta(e))
        sub[beta(e)] = P(alpha(e))
    return p.substitute(sub)


def xi_duality(R: RibbonGraph, limit: int | None = None) -> tuple[MPoly, MPoly, bool]:
    """(Xi_G, Xi_{G*} with alpha and beta exchanged, equal?)."""
    if not R.graph.is_connected():
        raise UnsupportedOperation("duality is only defined for connected ribbon graphs")
    lhs = xi(R, limit)
    rhs = swap_alpha_beta(xi(R.dual(), limit), R.graph.edge_ids())
    return lhs, rhs, lhs == rhs
