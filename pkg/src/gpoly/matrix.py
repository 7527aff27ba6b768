"""Exact linear algebra over the polynomial ring, and the matrix oracles built on it."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import UnsupportedOperation
from .graph import Graph
from .momentum import MomentumForm
from .polyring import ONE, ZERO, MPoly, P, alpha, beta, poly_prod, poly_sum

EXPANSION_MAX = 17    # below this dimension "auto" uses memoized expansion (graph matrices are sparse)


class SymMatrix:
    """Square matrix of MPoly entries; ``antisymmetric=True`` is checked on construction."""

    __slots__ = ("rows", "antisymmetric")

    def __init__(self, rows: Sequence[Sequence], antisymmetric: bool = False):
        self.rows = tuple(tuple(MPoly.coerce(x) for x in r) for r in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        self.antisymmetric = antisymmetric
        if antisymmetric:
            for i in range(n):
                if not self.rows[i][i].is_zero():
                    raise ValueError("antisymmetric matrix needs a zero diagonal")
                for j in range(i):
                    if self.rows[i][j] != -self.rows[j][i]:
                        raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not opposite")

    @classmethod
    def zeros(cls, n: int) -> "SymMatrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "SymMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "SymMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> MPoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        return SymMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other: "SymMatrix") -> "SymMatrix":
        cols = list(zip(*other.rows))
        return SymMatrix([[poly_sum(a * b for a, b in zip(r, c) if a and b) for c in cols]
                          for r in self.rows])

    def scale(self, c) -> "SymMatrix":
        return SymMatrix([[x * c for x in r] for r in self.rows])

    def transpose(self) -> "SymMatrix":
        return SymMatrix(list(zip(*self.rows)))

    def minor(self, drop_rows=(), drop_cols=()) -> "SymMatrix":
        dr, dc = set(drop_rows), set(drop_cols)
        return SymMatrix([[x for j, x in enumerate(r) if j not in dc]
                          for i, r in enumerate(self.rows) if i not in dr])

    def __repr__(self) -> str:
        return "SymMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


def rect_product(R: Sequence[Sequence[MPoly]], M: SymMatrix, S: Sequence[Sequence[MPoly]]) -> list[list[MPoly]]:
    """R . M . S^T for rectangular R, S given as row lists."""
    RM = [[poly_sum(r[k] * M.rows[k][j] for k in range(M.n) if r[k] and M.rows[k][j])
           for j in range(M.n)] for r in R]
    return [[poly_sum(a[k] * s[k] for k in range(M.n) if a[k] and s[k]) for s in S] for a in RM]


def bordered_sandwich(R: Sequence[Sequence[MPoly]], M: SymMatrix) -> list[list[MPoly]]:
    """R . adj(M) . R^T entrywise, from det [[M, b], [a, 0]] = -a adj(M) b."""
    out = [[ZERO] * len(R) for _ in R]
    for i, a in enumerate(R):
        if not any(a):
            continue
        for j, b in enumerate(R):
            if not any(b):
                continue
            rows = [list(r) + [b[k]] for k, r in enumerate(M.rows)] + [list(a) + [ZERO]]
            out[i][j] = -determinant(SymMatrix(rows))
    return out


# -- determinants ------------------------------------------------------------------

def det_expansion(M: SymMatrix) -> MPoly:
    """Laplace expansion along rows, memoized on the set of columns still free."""
    n = M.n
    rows = M.rows
    memo: dict[int, MPoly] = {}

    def rec(i: int, free: int) -> MPoly:
        if i == n:
            return ONE
        hit = memo.get(free)
        if hit is not None:
            return hit
        acc = []
        pos = 0
        for j in range(n):
            if free >> j & 1:
                a = rows[i][j]
                if a:
                    sub = rec(i + 1, free & ~(1 << j))
                    if sub:
                        t = a * sub
                        acc.append(-t if pos & 1 else t)
                pos += 1
        out = poly_sum(acc)
        memo[free] = out
        return out

    return rec(0, (1 << n) - 1)


def _fraction_free(M: SymMatrix, jordan: bool):
    """Bareiss elimination with exact division; None when M is singular.

    ``jordan=False``: plain forward elimination, the last pivot is +-det.
    ``jordan=True``: Gauss-Jordan on [M | I]; every pivot ends equal to
    d = det(PM) and the right block to d (PM)^{-1} P = d M^{-1}.
    Returns (rows, sign of the row permutation).
    """
    n = M.n
    eye = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    A = [list(r) + (eye[i] if jordan else []) for i, r in enumerate(M.rows)]
    width = len(A[0])
    prev = ONE
    sign = 1
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k]), None)
        if p is None:
            return None
        if p != k:
            A[k], A[p] = A[p], A[k]
            sign = -sign
        rk = A[k]
        piv = rk[k]
        for i in (range(n) if jordan else range(k + 1, n)):
            if i == k:
                continue
            ri = A[i]
            aik = ri[k]
            for j in range(width) if jordan else range(k + 1, width):
                if j == k:
                    continue
                t = piv * ri[j] if ri[j] else ZERO
                if aik and rk[j]:
                    t = t - aik * rk[j]
                ri[j] = t.exact_div(prev) if t and prev != ONE else t
            ri[k] = ZERO
        prev = piv
    return A, sign


def det_bareiss(M: SymMatrix) -> MPoly:
    if M.n == 0:
        return ONE
    res = _fraction_free(M, jordan=False)
    if res is None:
        return ZERO
    A, sign = res
    d = A[-1][-1]
    return d if sign > 0 else -d


def determinant(M: SymMatrix, method: str = "auto") -> MPoly:
    if method == "auto":
        method = "expansion" if M.n < EXPANSION_MAX else "bareiss"
    if method == "expansion":
        return det_expansion(M)
    if method == "bareiss":
        return det_bareiss(M)
    raise ValueError(f"unknown determinant method {method!r}")


def adjugate(M: SymMatrix, method: str = "auto") -> SymMatrix:
    """adj(M) with M adj(M) = det(M) I.

    Fraction-free Gauss-Jordan on [M | I] when M is nonsingular (then the
    right block is +-adj), cofactors otherwise.
    """
    n = M.n
    if n == 0:
        return SymMatrix([])
    if method in ("auto", "bareiss"):
        res = _fraction_free(M, jordan=True)
        if res is not None:
            A, sign = res
            d = A[n - 1][n - 1]
            if any(A[i][i] != d for i in range(n)):
                raise AssertionError("fraction-free Gauss-Jordan lost its diagonal invariant")
            # right block = d M^{-1} with d = sign * det M, hence sign * adj(M)
            right = [r[n:] for r in A]
            if sign < 0:
                right = [[-x for x in r] for r in right]
            return SymMatrix(right)
        if method == "bareiss":
            raise ArithmeticError("singular matrix: no fraction-free inverse")
    cof = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det_expansion(M.minor([j], [i]))
            cof[i][j] = -c if (i + j) & 1 else c
    return SymMatrix(cof)


def pfaffian(M: SymMatrix) -> MPoly:
    """Pfaffian by expansion along the first remaining index, memoized on index sets."""
    if not M.antisymmetric:
        M = SymMatrix(M.rows, antisymmetric=True)
    n = M.n
    if n % 2:
        raise UnsupportedOperation("Pfaffian of an odd-dimensional matrix")
    rows = M.rows
    memo: dict[int, MPoly] = {}

    def rec(free: int) -> MPoly:
        if free == 0:
            return ONE
        hit = memo.get(free)
        if hit is not None:
            return hit
        i = (free & -free).bit_length() - 1
        rest = free & ~(1 << i)
        acc = []
        pos = 0
        for j in range(i + 1, n):
            if rest >> j & 1:
                a = rows[i][j]
                if a:
                    sub = rec(rest & ~(1 << j))
                    if sub:
                        t = a * sub
                        acc.append(-t if pos & 1 else t)
                pos += 1
        out = poly_sum(acc)
        memo[free] = out
        return out

    return rec((1 << n) - 1)


# -- graph matrices ---------------------------------------------------------------

def q_matrix(G: Graph, weights: Mapping[str, MPoly] | None = None) -> SymMatrix:
    """D + A over (edges, vertices): D = diag(alpha_e, q_v), A_ev = -eps_ev, A_ve = +eps_ev."""
    from .classical import vertex_weights
    w = vertex_weights(G) if weights is None else weights
    es, vs = G.edge_ids(), G.sorted_vertices()
    n = len(es) + len(vs)
    rows = [[ZERO] * n for _ in range(n)]
    for i, e in enumerate(es):
        rows[i][i] = P(alpha(e))
    for j, v in enumerate(vs):
        rows[len(es) + j][len(es) + j] = MPoly.coerce(w[v])
    for i, e in enumerate(es):
        for j, v in enumerate(vs):
            eps = G.incidence(e, v)
            if eps:
                rows[i][len(es) + j] = MPoly.const(-eps)
                rows[len(es) + j][i] = MPoly.const(eps)
    return SymMatrix(rows)


def gen_v_via_adjugate(G: Graph, weights: Mapping[str, MPoly] | None = None) -> MomentumForm:
    """sum_{v,v'} p_v.p_v' adj(Q)_{vv'}; the dot form keeps only the symmetric part."""
    from .classical import vertex_momenta
    Q = q_matrix(G, weights)
    adj = adjugate(Q)
    E = G.E
    vs = G.sorted_vertices()
    pv = vertex_momenta(G)
    out = MomentumForm.zero()
    for a, v in enumerate(vs):
        for b, w in enumerate(vs):
            c = adj[E + a, E + b]
            if c:
                out = out + MomentumForm.bilinear(pv[v], pv[w], c)
    return out


def laplacian(G: Graph, edge_weight=beta) -> SymMatrix:
    """Weighted Laplacian d* d with edge weights ``edge_weight(e)`` (self-loops drop out)."""
    vs = G.sorted_vertices()
    idx = {v: i for i, v in enumerate(vs)}
    rows = [[ZERO] * len(vs) for _ in vs]
    for e in G.edges:
        if e.is_loop:
            continue
        b = P(edge_weight(e.id))
        t, h = idx[e.tail], idx[e.head]
        rows[t][t] = rows[t][t] + b
        rows[h][h] = rows[h][h] + b
        rows[t][h] = rows[t][h] - b
        rows[h][t] = rows[h][t] - b
    return SymMatrix(rows)


def schrodinger(G: Graph, weights: Mapping[str, MPoly] | None = None) -> SymMatrix:
    """H = d*d + V with beta_e = 1/alpha_e edge weights and V = diag(q_v)."""
    from .classical import vertex_weights
    w = vertex_weights(G) if weights is None else weights
    L = laplacian(G)
    return L + SymMatrix.diag([w[v] for v in G.sorted_vertices()])


def schrodinger_check(G: Graph, weights: Mapping[str, MPoly] | None = None):
    """(H, verdict) for (prod alpha) det H = gen_u, with beta = 1/alpha cleared."""
    from .classical import clear_beta, gen_u
    H = schrodinger(G, weights)
    lhs = clear_beta(determinant(H), G.edge_ids())
    rhs = gen_u(G, "subset", weights)
    return H, lhs == rhs


def tree_matrix_minor(G: Graph, root: str | None = None) -> MPoly:
    """Principal minor of the 1/alpha-weighted Laplacian, as a polynomial in beta_e = 1/alpha_e."""
    if not G.is_connected():
        raise UnsupportedOperation("tree-matrix minor needs a connected graph")
    vs = G.sorted_vertices()
    r = vs[-1] if root is None else root
    L = laplacian(G)
    i = vs.index(r)
    return determinant(L.minor([i], [i]))


def symanzik_u_via_minor(G: Graph, root: str | None = None) -> MPoly:
    """U_G = (prod alpha) * sum_T prod_{e in T} 1/alpha_e; disconnected graphs multiply over components."""
    from .classical import clear_beta
    if G.is_connected():
        return clear_beta(tree_matrix_minor(G, root), G.edge_ids())
    out = ONE
    for comp in G.components():
        cs = set(comp)
        sub = Graph(tuple(comp), tuple(e for e in G.edges if e.tail in cs), (), frozenset(), G.name)
        out = out * symanzik_u_via_minor(sub)
    return out
