"""Cross-check suites: every identity is evaluated on the fixtures plus seeded random graphs.

An identity maps a graph to True, False, or None (not applicable).  Work
is split per (identity, graph) and may run in a process pool; results are
merged in submission order, so reports do not depend on the pool size.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import bollobas as B
from . import classical as C
from . import matrix as M
from . import moyal as NC
from .errors import ResourceLimitError, UnsupportedOperation
from .fixtures import named, random_ribbon, random_rosette
from .graph import Graph
from .polyring import THETA, Z
from .ribbon import RibbonGraph

SUITES = ("classical", "matrix", "br", "nc")


@dataclass(frozen=True)
class CheckConfig:
    seed: int = 0
    n_random: int = 100          # random graphs per suite
    n_rosettes: int = 60
    max_edges: int | None = None  # graphs above this size are skipped
    jobs: int = 1


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        extra = f"; failed on {', '.join(self.failures)}" if self.failures else ""
        return f"{tag} {self.suite}/{self.name} ({self.passed} passed, {self.skipped} n/a{extra})"


# -- identities -------------------------------------------------------------------

def _connected(G: Graph) -> bool:
    return G.is_connected()


def c_tutte(G):
    return C.tutte(G, "subset") == C.tutte(G, "delcontr")


def c_zmult(G):
    return C.z_multivariate(G, "subset") == C.z_multivariate(G, "delcontr")


def c_forest(G):
    """Forest polynomial = the terms of Z whose beta-set is acyclic."""
    def acyclic(powers):
        return G.metrics([a.payload for a in powers if a.kind.name == "BETA"])[2] == 0
    return C.forest_poly(G) == C.z_multivariate(G).filter_terms(acyclic)


def c_gen_u(G):
    return C.gen_u(G, "subset") == C.gen_u(G, "delcontr")


def c_sym_u(G):
    return C.symanzik_u(G, "subset") == C.symanzik_u(G, "delcontr")


def c_recover_u(G):
    if not _connected(G):
        return None
    U = C.symanzik_u(G)
    return all(C.recover_u(G, v) == U for v in G.vertices)


def c_recover_v(G):
    if not _connected(G) or not G.flags:
        return None
    return C.recover_v(G) == C.symanzik_v(G, "symmetric")


def c_v_variants(G):
    if not _connected(G) or not G.flags:
        return None
    from .momentum import conserve_flags
    return conserve_flags(C.symanzik_v(G, "symmetric"), G.flags) == C.symanzik_v(G, "conserved")


def c_diagram(G):
    """Both routes agree; on connected graphs they land on U (the q-linear term vanishes otherwise)."""
    d = C.diagram(G)
    if d["U_top"] != d["U_bottom"]:
        return False
    return d["U_top"] == (C.symanzik_u(G.with_flags()) if _connected(G) else 0)


def m_gen_u(G):
    return C.gen_u(G, "subset") == C.gen_u(G, "matrix")


def m_gen_v(G):
    return C.gen_v(G, "subset") == C.gen_v(G, "matrix")


def m_minor(G):
    return C.symanzik_u(G, "subset") == M.symanzik_u_via_minor(G)


def m_schrodinger(G):
    return M.schrodinger_check(G)[1]


def m_det_methods(G):
    Q = M.q_matrix(G)
    return M.det_expansion(Q) == M.det_bareiss(Q)


def b_br(R):
    return B.br(R, "subset") == B.br(R, "delcontr")


def b_tutte(R):
    return B.tutte_specialization(R) == C.tutte(R.graph)


def b_planar(R):
    if R.genus() != 0 or R.graph.k() != 1:
        return None
    return B.br(R).degree(Z) == 0


def b_euler(R):
    G = R.graph
    for H in G.subsets("all_subsets"):
        k, _, n = G.metrics(H)
        if k - R.bc(H) + n != 2 * R.genus(H):
            return False
    return True


def b_duality(R):
    if not _connected(R.graph) or R.E > 6:
        return None
    return B.xi_duality(R)[2]


def b_double(R):
    if not R.is_rosette() or R.genus() == 0:
        return None
    for pair in R.nice_crossings():
        S = R.double_contract(*pair)       # raises if genus/bc are not as expected
        if S.genus() != R.genus() - 1 or S.bc() != R.bc() or S.E != R.E - 2:
            return False
    return True


def n_u(R):
    if not _connected(R.graph):
        return None
    u = NC.nc_u(R, "startree")
    return all(NC.nc_u(R, m) == u for m in ("matrix", "br_limit", "delcontr"))


def n_u_root(R):
    if not _connected(R.graph):
        return None
    u = NC.nc_u(R, "matrix")
    return all(NC.nc_u(R, "matrix", root=v) == u for v in R.graph.vertices)


def n_x(R):
    if not _connected(R.graph) or not R.graph.flags:
        return None
    return NC.nc_x(R, "twostartree") == NC.nc_x(R, "matrix")


def n_y(R):
    if not _connected(R.graph) or not R.graph.flags:
        return None
    return NC.nc_y(R, "startree") == NC.nc_y(R, "matrix")


def n_reroot(R):
    if not _connected(R.graph) or not R.graph.flags:
        return None
    y = NC.nc_y(R)
    S = R.rerooted(1)
    return NC.nc_y(S) == y and NC.nc_y(S, "matrix") == y


def n_delcontr(R):
    if not _connected(R.graph):
        return None
    return NC.nc_delcontr_check(R)


def n_rosette_law(R):
    if not R.is_rosette() or NC.isolated_crossing(R) is None:
        return None
    return NC.rosette_u(R) == NC.nc_u(R, "startree")


def n_xi(R):
    if not _connected(R.graph) or not R.graph.flags:
        return None
    return all(NC.xi_expansion_check(R).values())


def n_commutative(R):
    if not _connected(R.graph):
        return None
    u0 = NC.nc_u(R).extract(THETA, 0)
    if u0 != C.symanzik_u(R.graph):
        return False
    if R.graph.flags:
        x0 = NC.nc_x(R).map_coeffs(lambda c: c.extract(THETA, 0))
        return x0 == C.symanzik_v(R.graph, "conserved")
    return True


def n_even_theta(R):
    if not _connected(R.graph):
        return None
    return all(e % 2 == 0 for e in NC.nc_u(R).coefficients(THETA))


IDENTITIES: dict[str, list[tuple[str, Callable]]] = {
    "classical": [("tutte subset=delcontr", c_tutte), ("Z subset=delcontr", c_zmult),
                  ("forest = acyclic part of Z", c_forest),
                  ("gen_u subset=delcontr", c_gen_u), ("U subset=delcontr", c_sym_u),
                  ("dU/dq_v at 0 = U", c_recover_u), ("second derivative = V", c_recover_v),
                  ("V symmetric = V conserved", c_v_variants),
                  ("W diagram commutes", c_diagram)],
    "matrix": [("gen_u = det Q", m_gen_u), ("gen_v = adjugate form", m_gen_v),
               ("U = tree-matrix minor", m_minor), ("Schrodinger determinant", m_schrodinger),
               ("expansion = Bareiss", m_det_methods)],
    "br": [("BR subset=delcontr", b_br), ("R~(x-1,y-1,1) = Tutte", b_tutte),
           ("planar BR has no z", b_planar), ("k-bc+n = 2g per subset", b_euler),
           ("Xi duality", b_duality), ("double contraction lowers g", b_double)],
    "nc": [("U* startree=matrix=br_limit=delcontr", n_u), ("U* root independence", n_u_root),
           ("X* twostartree=matrix", n_x), ("Y* startree=matrix", n_y),
           ("Y* rotation-start independence", n_reroot), ("det(D+A) deletion/contraction", n_delcontr),
           ("rosette factor law", n_rosette_law), ("Xi expansion", n_xi),
           ("theta^0 = commutative", n_commutative), ("even theta powers", n_even_theta)],
}


def corpus(suite: str, cfg: CheckConfig) -> list[tuple[str, object]]:
    """Labelled inputs for a suite: fixtures first, then seeded random graphs."""
    fx = named()
    ribbon = suite in ("br", "nc")
    items: list[tuple[str, object]] = [(k, r if ribbon else r.graph) for k, r in fx.items()]
    for i in range(cfg.n_random):
        s = cfg.seed * 100003 + i
        if suite == "nc":
            r = random_ribbon(s, max_v=5, max_e=6, max_flags=3, connected=True)
        else:
            r = random_ribbon(s, max_v=6, max_e=7, max_flags=3)
        items.append((f"rnd{s}", r if ribbon else r.graph))
    if ribbon:
        for i in range(cfg.n_rosettes):
            s = cfg.seed * 100003 + i
            items.append((f"ros{s}", random_rosette(s, max_e=6)))
    return items


def _size(obj) -> int:
    return obj.E


def _run_one(task):
    fn, label, obj = task
    try:
        return label, fn(obj)
    except (UnsupportedOperation, ResourceLimitError):
        return label, None


def run(suites=("all",), cfg: CheckConfig = CheckConfig()) -> list[CheckResult]:
    names = SUITES if "all" in suites else tuple(s for s in SUITES if s in suites)
    unknown = [s for s in suites if s != "all" and s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    results: list[CheckResult] = []
    tasks, owners = [], []
    for suite in names:
        items = corpus(suite, cfg)
        for name, fn in IDENTITIES[suite]:
            res = CheckResult(suite, name)
            results.append(res)
            for label, obj in items:
                if cfg.max_edges is not None and _size(obj) > cfg.max_edges:
                    res.skipped += 1
                    continue
                tasks.append((fn, label, obj))
                owners.append(res)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            outs = list(ex.map(_run_one, tasks, chunksize=8))
    else:
        outs = [_run_one(t) for t in tasks]
    for res, (label, verdict) in zip(owners, outs):
        if verdict is None:
            res.skipped += 1
        elif verdict:
            res.passed += 1
        else:
            res.failures.append(label)
    return results


def report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    bad = sum(1 for r in results if not r.ok)
    lines.append(f"{len(results) - bad}/{len(results)} identities hold")
    return "\n".join(lines)
