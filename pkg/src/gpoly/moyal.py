"""Noncommutative (Moyal) Symanzik polynomials of ribbon graphs.

Three independent routes: sums over star-trees (spanning ribbon subgraphs
with a single boundary), determinants of the Moyal matrix, and the
theta-scaled limit of the multivariate BR polynomial.  b = E - V + 1.

Momentum conventions: flag momenta enter the vertex (eps = +1); a half-edge
carries eps = +1 at the tail and -1 at the head.  ``p_a ^ p_b`` stands for
p_a Theta p_b.  Results are reduced by momentum conservation unless asked
otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GraphError, UnsupportedOperation
from .matrix import SymMatrix, bordered_sandwich, determinant
from .momentum import WEDGE, MomentumForm, conserve_flags
from .polyring import (ONE, THETA, Z, ZERO, MPoly, P, X, alpha, natural_key, poly_prod,
                       poly_sum, wi)
from .ribbon import Boundary, RibbonGraph

HALF_THETA = P(THETA) * Fraction(1, 2)
# constants of the matrix route, fixed on the non-planar sunshine anchor:
# an antisymmetric entry enters the quadratic form twice, hence theta/4
PAIR_COUPLING = P(THETA) * Fraction(1, 4)
X_SIGN = 1
Y_SCALE = -1                  # times 1/theta
XI_X_SIGN = -1


def _require(R: RibbonGraph, flags: bool = False) -> None:
    if not R.graph.is_connected():
        raise GraphError("noncommutative polynomials need a connected ribbon graph")
    if flags and not R.graph.flags:
        raise UnsupportedOperation("this polynomial needs at least one flag")


def _check_method(method, allowed):
    if method not in allowed:
        raise UnsupportedOperation(f"method {method!r} not available here (use one of {', '.join(allowed)})")


def _lin(R: RibbonGraph) -> dict[str, dict[str, int]]:
    return {f.id: f.momentum_linear() for f in R.graph.flags}


def _weight(R: RibbonGraph, A: Sequence[str], shift: int) -> MPoly:
    """prod_{e not in A} alpha_e * (theta/2)^{|A| - V + shift}; the power is never negative."""
    k = len(A) - R.V + shift
    if k < 0:
        raise AssertionError("negative theta power: subset family is wrong")
    sA = set(A)
    return poly_prod(P(alpha(e)) for e in R.graph.edge_ids() if e not in sA) * HALF_THETA ** k


def star_trees(R: RibbonGraph, limit: int | None = None):
    """Spanning subsets with exactly one boundary (they are connected and spanning)."""
    for A in R.graph.subsets("all_subsets", limit):
        if R.bc(A) == 1:
            yield A


def two_star_trees(R: RibbonGraph, limit: int | None = None):
    for A in R.graph.subsets("all_subsets", limit):
        bs = R.boundaries(A)
        if len(bs) == 2:
            yield A, bs


def psi(R: RibbonGraph, boundary: Boundary) -> MomentumForm:
    """1/2 sum_{i<j} p_i ^ p_j along the boundary, read like a vertex rotation."""
    lin = _lin(R)
    fs = boundary.flags
    out = MomentumForm.zero()
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            out = out + MomentumForm.bilinear(lin[fs[i]], lin[fs[j]], Fraction(1, 2), WEDGE)
    return out


def _flag_momentum(R: RibbonGraph, flags) -> dict[str, int]:
    lin = _lin(R)
    out: dict[str, int] = {}
    for f in flags:
        for s, c in lin[f].items():
            out[s] = out.get(s, 0) + c
    return {s: c for s, c in out.items() if c}


def _finish(R: RibbonGraph, form: MomentumForm, conserve: bool) -> MomentumForm:
    return conserve_flags(form, R.graph.flags) if conserve else form


# -- U* ---------------------------------------------------------------------------

def nc_u(R: RibbonGraph, method: str = "startree", root: str | None = None,
         limit: int | None = None) -> MPoly:
    _check_method(method, ("startree", "matrix", "br_limit", "delcontr"))
    _require(R)
    if method == "startree":
        return poly_sum(_weight(R, A, 1) for A in star_trees(R, limit))
    if method == "matrix":
        R.graph.guard(limit)
        return determinant(moyal_matrix(R, root).Q)
    if method == "br_limit":
        return nc_u_br_limit(R, limit)
    return nc_u_delcontr(R, limit)


def nc_u_br_limit(R: RibbonGraph, limit: int | None = None) -> MPoly:
    """(2/theta)^{V-1} (prod alpha) [w^1] Z_G(x=1, beta_e = theta/(2 alpha_e), w)."""
    from .bollobas import br_multivariate
    _require(R)
    one_face = br_multivariate(R, limit).substitute({X: 1}).extract(Z, 1)

    def term(powers, c):
        A = [a.payload for a in powers]
        return _weight(R, A, 1) * c
    return one_face.map_terms(term)


def isolated_crossing(R: RibbonGraph) -> tuple[str, str] | None:
    """A nice crossing whose two loops cross nothing else."""
    for e1, e2 in R.nice_crossings():
        if set(R.crosses(e1)) | set(R.crosses(e2)) == {e1, e2}:
            return e1, e2
    return None


def rosette_u(R: RibbonGraph) -> MPoly:
    """U* of a rosette.

    An isolated nice crossing factors out alpha1 alpha2 + theta^2/4 (its two
    rows decouple from the rest of the Moyal matrix); a planar rosette gives
    prod alpha.  A crossing pair that meets other loops does not factor, and
    what remains is summed over star-trees.
    """
    out = ONE
    while True:
        if R.genus() == 0:
            return out * poly_prod(P(alpha(e)) for e in R.graph.edge_ids())
        pair = isolated_crossing(R)
        if pair is None:
            return out * nc_u(R, "startree")
        e1, e2 = pair
        out = out * (P(alpha(e1)) * P(alpha(e2)) + HALF_THETA ** 2)
        R = R.double_contract(e1, e2)


def nc_u_delcontr(R: RibbonGraph, limit: int | None = None) -> MPoly:
    """U*_G = alpha_e U*_{G-e} + U*_{G/e} on a regular edge; bridges contract; rosettes terminate."""
    _require(R)
    R.graph.guard(limit)
    memo: dict = {}

    def rec(S: RibbonGraph) -> MPoly:
        key = S.canonical_key()
        if key in memo:
            return memo[key]
        G = S.graph
        e = next((x for x in G.edge_ids() if not G.edge(x).is_loop), None)
        if e is None:
            out = rosette_u(S)
        elif G.k([x for x in G.edge_ids() if x != e]) > 1:
            out = rec(S.contract(e))
        else:
            out = P(alpha(e)) * rec(S.delete(e)) + rec(S.contract(e))
        memo[key] = out
        return out

    return rec(R)


# -- matrix route -------------------------------------------------------------------

@dataclass(frozen=True)
class MoyalMatrix:
    """Q = D + A over (edges, non-root vertices); couplings of flags to them and to each other."""
    edges: tuple[str, ...]
    vertices: tuple[str, ...]
    flags: tuple[str, ...]
    root: str
    Q: SymMatrix
    coupling: tuple[tuple[MPoly, ...], ...]     # flags x (edges, vertices)
    flag_block: SymMatrix                       # antisymmetric flag-flag phases


def _root(R: RibbonGraph, root: str | None) -> str:
    vs = R.graph.sorted_vertices()
    if root is None:
        return vs[-1]
    if root not in vs:
        raise GraphError(f"unknown root vertex {root!r}")
    return root


def moyal_matrix(R: RibbonGraph, root: str | None = None) -> MoyalMatrix:
    """Build the Moyal matrix.

    Along each vertex rotation, slots i < j with signs eps_i, eps_j and
    variables a, b add -theta/4 eps_i eps_j to entry (a, b) and the opposite
    to (b, a).  Vertex columns carry -eps_ev (row side) and +eps_ev.
    """
    G = R.graph
    r = _root(R, root)
    es = G.edge_ids()
    vs = [v for v in G.sorted_vertices() if v != r]
    fs = [f.id for f in G.sorted_flags()]
    idx = {("e", e): i for i, e in enumerate(es)}
    idx.update({("v", v): len(es) + i for i, v in enumerate(vs)})
    idx.update({("f", f): len(es) + len(vs) + i for i, f in enumerate(fs)})
    n = len(idx)
    A = [[ZERO] * n for _ in range(n)]
    for v, slots in R.rotation:
        seq = [(idx[(s.kind, s.id)], 1 if s.kind == "f" or s.end == "a" else -1) for s in slots]
        for i in range(len(seq)):
            a, ea = seq[i]
            for j in range(i + 1, len(seq)):
                b, eb = seq[j]
                c = PAIR_COUPLING * (-ea * eb)
                A[a][b] = A[a][b] + c
                A[b][a] = A[b][a] - c
        if v == r:
            continue
        vi = idx[("v", v)]
        for a, ea in seq:
            A[a][vi] = A[a][vi] - ea
            A[vi][a] = A[vi][a] + ea
    m = len(es) + len(vs)
    for i, e in enumerate(es):
        A[i][i] = A[i][i] + P(alpha(e))
    Q = SymMatrix([row[:m] for row in A[:m]])
    coupling = tuple(tuple(row[:m]) for row in A[m:])
    flag_block = SymMatrix([row[m:] for row in A[m:]], antisymmetric=True)
    return MoyalMatrix(tuple(es), tuple(vs), tuple(fs), r, Q, coupling, flag_block)


def _reduced_block(M: MoyalMatrix) -> tuple[MPoly, list[list[MPoly]]]:
    """(U*, U* F + C adj(Q) C^T) with C the flag coupling rows: U* times the effective flag form."""
    U = determinant(M.Q)
    if M.Q.n == 0:
        T = [[ZERO] * len(M.flags) for _ in M.flags]
    else:
        T = bordered_sandwich(M.coupling, M.Q)
    return U, T


def _pair_form(R: RibbonGraph, M: MoyalMatrix, block, kind: str) -> MomentumForm:
    lin = _lin(R)
    out = MomentumForm.zero()
    for a, f in enumerate(M.flags):
        for b, g in enumerate(M.flags):
            if block[a][b]:
                out = out + MomentumForm.bilinear(lin[f], lin[g], block[a][b], kind)
    return out


# -- X* ---------------------------------------------------------------------------

def nc_x(R: RibbonGraph, method: str = "twostartree", root: str | None = None,
         conserve: bool = True, limit: int | None = None) -> MomentumForm:
    _check_method(method, ("twostartree", "matrix"))
    _require(R, flags=True)
    if method == "twostartree":
        out = MomentumForm.zero()
        for A, bs in two_star_trees(R, limit):
            out = out + MomentumForm.square(_flag_momentum(R, bs[0].flags), _weight(R, A, 2))
        return _finish(R, out, conserve)
    R.graph.guard(limit)
    M = moyal_matrix(R, root)
    _, T = _reduced_block(M)
    # the dot form keeps the symmetric (real) part only
    return _finish(R, _pair_form(R, M, T, "dot") * X_SIGN, conserve)


# -- Y* ---------------------------------------------------------------------------

def nc_y(R: RibbonGraph, method: str = "startree", root: str | None = None,
         conserve: bool = True, limit: int | None = None) -> MomentumForm:
    _check_method(method, ("startree", "matrix"))
    _require(R, flags=True)
    if method == "startree":
        out = MomentumForm.zero()
        for A in star_trees(R, limit):
            b, = R.boundaries(A)
            out = out + psi(R, b) * _weight(R, A, 1)
        return _finish(R, out, conserve)
    R.graph.guard(limit)
    M = moyal_matrix(R, root)
    U, T = _reduced_block(M)
    n = len(M.flags)
    N = [[U * M.flag_block[a, b] + T[a][b] for b in range(n)] for a in range(n)]
    # the wedge form keeps the antisymmetric (imaginary) part only
    form = _pair_form(R, M, N, WEDGE).map_coeffs(lambda c: c.exact_div(P(THETA)) * Y_SCALE)
    return _finish(R, form, conserve)


# -- Xi expansion -------------------------------------------------------------------

def _xi_rescaled(R: RibbonGraph, w_of, limit: int | None = None):
    """(theta/2)^{E-V} Xi(alpha -> 2 alpha/theta, beta -> 1, w_I -> (theta/2) w_of(I)).

    ``w_of`` returns an MPoly (or None for zero); done term by term so that
    no negative power of theta ever appears.
    """
    from .bollobas import xi
    E, V = R.E, R.V

    def term(powers, c):
        n_alpha = 0
        rest = ONE
        n_w = 0
        for a, e in powers.items():
            name = a.kind.name
            if name == "ALPHA":
                n_alpha += e
                rest = rest * P(a) ** e
            elif name == "WSET":
                val = w_of(a.payload)
                if val is None:
                    return ZERO
                n_w += e
                rest = rest * val ** e
        k = n_w + E - V - n_alpha
        if k < 0:
            raise AssertionError("negative theta power in the rescaled Xi")
        return rest * (HALF_THETA ** k) * c

    return xi(R, limit).map_terms(term)


def xi_u_x(R: RibbonGraph, limit: int | None = None) -> tuple[MPoly, MomentumForm]:
    """U* and X* read off the rescaled Xi with w_I = sum_{i in I} w_i."""
    _require(R, flags=True)
    res = _xi_rescaled(R, lambda I: poly_sum(P(wi(f)) for f in I) if I else None, limit)
    fs = [f.id for f in R.graph.sorted_flags()]
    lin = _lin(R)
    U = res.extract(wi(fs[0]), 1).evaluate({wi(f): 0 for f in fs[1:]})
    Xf = MomentumForm.zero()
    for i, f in enumerate(fs):
        for g in fs[i + 1:]:
            c = res.extract(wi(f), 1).extract(wi(g), 1).evaluate({wi(h): 0 for h in fs})
            if c:
                Xf = Xf + MomentumForm.bilinear(lin[f], lin[g], c * XI_X_SIGN)
    return U, conserve_flags(Xf, R.graph.flags)


def xi_y(R: RibbonGraph, limit: int | None = None) -> MomentumForm:
    """Y* from the rescaled Xi with w_I = psi_I on boundaries holding every flag, 0 elsewhere."""
    _require(R, flags=True)
    allf = {f.id for f in R.graph.flags}
    marks: dict = {}

    def w_of(I):
        if set(I) != allf:
            return None
        marks[I] = P(wi(f"psi{len(marks)}")) if I not in marks else marks[I]
        return marks[I]

    res = _xi_rescaled(R, w_of, limit)
    out = MomentumForm.zero()
    for I, mark in marks.items():
        c = res.extract(mark.atoms().pop(), 1)
        out = out + psi(R, Boundary(tuple(_flag_slots(I)))) * c
    return conserve_flags(out, R.graph.flags)


def _flag_slots(I):
    from .ribbon import fl
    return [fl(f) for f in I]


def xi_expansion_check(R: RibbonGraph, limit: int | None = None) -> dict[str, bool]:
    U, Xf = xi_u_x(R, limit)
    return {"U*": U == nc_u(R, limit=limit),
            "X*": Xf == nc_x(R, limit=limit),
            "Y*": xi_y(R, limit) == nc_y(R, limit=limit)}


def nc_delcontr_check(R: RibbonGraph, limit: int | None = None) -> bool:
    """det(D+A) obeys deletion/contraction on every regular edge and the rosette law at the leaves."""
    _require(R)
    G = R.graph
    U = nc_u(R, "matrix", limit=limit)
    for e in G.edge_ids():
        if G.edge(e).is_loop:
            continue
        if G.k([x for x in G.edge_ids() if x != e]) > 1:
            if U != nc_u(R.contract(e), "matrix"):
                return False
        elif U != P(alpha(e)) * nc_u(R.delete(e), "matrix") + nc_u(R.contract(e), "matrix"):
            return False
    if R.is_rosette():
        pair = isolated_crossing(R)
        if pair is not None and U != (P(alpha(pair[0])) * P(alpha(pair[1])) + HALF_THETA ** 2) \
                * nc_u(R.double_contract(*pair), "matrix"):
            return False
    return True


# -- context object -------------------------------------------------------------------

@dataclass(frozen=True)
class MoyalContext:
    """Options shared by the noncommutative polynomials of one ribbon graph."""
    ribbon: RibbonGraph
    root: str | None = None
    conserve: bool = True
    limit: int | None = None

    def u(self, method: str = "startree") -> MPoly:
        return nc_u(self.ribbon, method, self.root, self.limit)

    def x(self, method: str = "twostartree") -> MomentumForm:
        return nc_x(self.ribbon, method, self.root, self.conserve, self.limit)

    def y(self, method: str = "startree") -> MomentumForm:
        return nc_y(self.ribbon, method, self.root, self.conserve, self.limit)
