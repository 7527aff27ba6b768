"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line, printed at the end of the run.

    pytest tests/test_acceptance.py            # lines appear in the terminal summary
    python3 tests/test_acceptance.py           # same, without pytest's report
"""

import functools
import os
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from gpoly import bollobas as B
from gpoly import classical as C
from gpoly import matrix as M
from gpoly import moyal as NC
from gpoly.fixtures import named, random_ribbon, random_rosette, rosette
from gpoly.momentum import MomentumForm, conserve_flags
from gpoly.polyring import THETA, Z, P, alpha, beta, qset

ROOT = Path(__file__).resolve().parents[1]
LINES: list[str] = []
N_RANDOM = 100


def criterion(n: int, title: str, budget: float | None = None):
    """Record PASS/FAIL with the elapsed time; a time budget is part of the criterion."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            t0 = time.perf_counter()
            try:
                detail = fn(*a, **kw) or ""
            except BaseException as exc:
                dt = time.perf_counter() - t0
                LINES.append(f"FAIL criterion {n:>2}: {title} ({dt:.2f}s; {type(exc).__name__}: {exc})"[:400])
                raise
            dt = time.perf_counter() - t0
            slow = budget is not None and dt >= budget
            tag = "FAIL" if slow else "PASS"
            limit = f" < {budget:g}s" if budget is not None else ""
            LINES.append(f"{tag} criterion {n:>2}: {title} ({dt:.2f}s{limit}{'; ' + detail if detail else ''})")
            assert not slow, f"took {dt:.2f}s, budget {budget}s"
        return run
    return wrap


def fixtures():
    return named()


def random_graphs():
    return [random_ribbon(s, max_v=6, max_e=7, max_flags=3).graph for s in range(N_RANDOM)]


# 1 -------------------------------------------------------------------------------

@criterion(1, "NP3 golden U* (startree, matrix, br_limit) and X*", budget=1.0)
def test_c1_np3():
    R = named()["np3"]
    a1, a2, a3 = (P(alpha(f"e{i}")) for i in (1, 2, 3))
    quarter = P(THETA) ** 2 * Fraction(1, 4)
    u = a1 * a2 + a1 * a3 + a2 * a3 + quarter
    x = MomentumForm.square({"p": 1}, a1 * a2 * a3 + quarter * (a1 + a2 + a3))
    for m in ("startree", "matrix", "br_limit"):
        assert NC.nc_u(R, m) == u, m
    for m in ("twostartree", "matrix"):
        assert NC.nc_x(R, m) == x, m
    return f"U* = {u}"


# 2 -------------------------------------------------------------------------------

@criterion(2, "bubble W golden value", budget=1.0)
def test_c2_w_bubble():
    b1, b2 = P(beta("e1")), P(beta("e2"))
    q = lambda *fs: P(qset(fs))          # noqa: E731
    want = (b1 * b2 + b1 + b2) * q("f1", "f2", "f3") + q("f1", "f2") * q("f3")
    assert C.w_categorified(named()["b2f"].graph) == want
    return f"W = {want}"


# 3 -------------------------------------------------------------------------------

@criterion(3, "method agreement over fixtures + 100 random graphs", budget=60.0)
def test_c3_method_agreement():
    graphs = [r.graph for r in fixtures().values()] + random_graphs()
    assert max(g.E for g in graphs) <= 7 and max(g.V for g in graphs) <= 6
    for G in graphs:
        assert C.tutte(G, "subset") == C.tutte(G, "delcontr"), G.name
        assert C.z_multivariate(G, "subset") == C.z_multivariate(G, "delcontr"), G.name
        gu = C.gen_u(G, "subset")
        assert gu == C.gen_u(G, "delcontr"), G.name
        assert gu == M.determinant(M.q_matrix(G)), G.name
        assert C.gen_v(G, "subset") == M.gen_v_via_adjugate(G), G.name
        assert C.symanzik_u(G) == M.symanzik_u_via_minor(G), G.name
    return f"{len(graphs)} graphs"


# 4 -------------------------------------------------------------------------------

@criterion(4, "recovery limits on all fixtures")
def test_c4_recovery():
    n_u = n_v = 0
    for name, R in fixtures().items():
        G = R.graph
        if not G.is_connected():
            continue
        U = C.symanzik_u(G)
        for v in G.vertices:
            assert C.recover_u(G, v) == U, (name, v)
            n_u += 1
        if G.flags:
            rv = C.recover_v(G)
            assert rv == C.symanzik_v(G, "symmetric"), name
            assert conserve_flags(rv, G.flags) == C.symanzik_v(G, "conserved"), name
            n_v += 1
    assert n_v >= 4
    return f"{n_u} vertex choices, {n_v} second-derivative checks"


# 5 -------------------------------------------------------------------------------

@criterion(5, "BR suite: Tutte specialization, planar z-independence, subset=delcontr, Euler", budget=60.0)
def test_c5_br():
    ribbons = list(fixtures().values()) + [random_ribbon(s, max_v=6, max_e=7) for s in range(N_RANDOM)]
    planar = 0
    for R in ribbons:
        G = R.graph
        assert B.tutte_specialization(R) == C.tutte(G), G.name
        br = B.br(R, "subset")
        assert br == B.br(R, "delcontr"), G.name
        if R.genus() == 0 and G.k() == 1:
            assert br.degree(Z) == 0, G.name
            planar += 1
        for A in G.subsets():
            k, _, n = G.metrics(A)
            assert k - R.bc(A) + n == 2 * R.genus(A), (G.name, A)
    return f"{len(ribbons)} ribbon graphs, {planar} planar connected"


# 6 -------------------------------------------------------------------------------

@criterion(6, "Xi duality on connected fixtures + 50 random connected ribbon graphs")
def test_c6_xi_duality():
    graphs = [R for R in fixtures().values() if R.graph.is_connected()]
    graphs += [random_ribbon(s, max_v=5, max_e=6, connected=True) for s in range(50)]
    assert max(R.E for R in graphs) <= 6
    for R in graphs:
        lhs, rhs, ok = B.xi_duality(R)
        assert ok and lhs == rhs, R.graph.name
    return f"{len(graphs)} graphs"


# 7 -------------------------------------------------------------------------------

@criterion(7, "categorified diagram: both routes give the same U")
def test_c7_diagram():
    for name, R in fixtures().items():
        d = C.diagram(R.graph)
        assert d["U_top"] == d["U_bottom"], name
        if R.graph.is_connected():
            assert d["U_top"] == C.symanzik_u(R.graph.with_flags()), name
    return f"{len(fixtures())} fixtures"


# 8 -------------------------------------------------------------------------------

@criterion(8, "Euler identity everywhere; double contraction on >= 50 rosettes")
def test_c8_ribbon_invariants():
    generated = list(fixtures().values()) + [random_ribbon(s) for s in range(N_RANDOM)]
    generated += [random_rosette(s, max_e=7) for s in range(200)]
    for R in generated:
        k, _, n = R.graph.metrics()
        assert k - R.bc() + n == 2 * R.genus()
    instances = 0
    for R in generated:
        if not R.is_rosette():
            continue
        for pair in R.nice_crossings():
            S = R.double_contract(*pair)
            assert S.genus() == R.genus() - 1 and S.bc() == R.bc(), (R.graph.name, pair)
            instances += 1
    assert instances >= 50
    return f"{len(generated)} graphs, {instances} double contractions"


# 9 -------------------------------------------------------------------------------

@criterion(9, "NC deletion/contraction on fixtures; rosette factor law")
def test_c9_nc_delcontr():
    edges = 0
    for name, R in fixtures().items():
        if not R.graph.is_connected():
            continue
        assert NC.nc_delcontr_check(R), name
        edges += sum(1 for e in R.graph.edges if not e.is_loop)
    laws = 0
    cases = [named()["x2"], rosette("e1 e2 E1 E2 e3 E3"), rosette("e1 e2 E1 E2 e3 e4 E3 E4")]
    cases += [random_rosette(s, max_e=6) for s in range(200)]
    for R in cases:
        pair = NC.isolated_crossing(R)
        if pair is None:
            continue
        e1, e2 = pair
        law = (P(alpha(e1)) * P(alpha(e2)) + P(THETA) ** 2 * Fraction(1, 4)) \
            * NC.nc_u(R.double_contract(e1, e2), "startree")
        assert law == NC.nc_u(R, "startree"), R.graph.name
        assert NC.rosette_u(R) == NC.nc_u(R, "startree"), R.graph.name
        laws += 1
    assert laws >= 50
    return f"{edges} semi-regular edges, {laws} rosettes with a factoring crossing"


# 10 ------------------------------------------------------------------------------

def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    res = subprocess.run([sys.executable, *args], cwd=ROOT, env=env, capture_output=True, check=False)
    return res.returncode, res.stdout


@criterion(10, "determinism of check --suite all and every compute over 3 runs and 1/4/8 jobs")
def test_c10_determinism():
    check = ["-m", "gpoly.cli", "check", "--suite", "all"]
    runs = [_cli(check, s) for s in (1, 2, 3)]
    runs += [_cli(check + ["--jobs", str(j)], 4 + j) for j in (4, 8)]
    assert runs[0][0] == 0
    assert all(r == runs[0] for r in runs)
    sweep = [str(ROOT / "scripts" / "compute_sweep.py")]
    outs = [_cli(sweep, s) for s in (1, 2, 3)]
    outs += [_cli(sweep + ["--jobs", str(j)], 4 + j) for j in (4, 8)]
    assert outs[0][0] == 0
    assert all(o == outs[0] for o in outs)
    n = outs[0][1].count(b"\n$ ") + 1
    return f"{len(runs)} check transcripts, {len(outs)} x {n} compute outputs identical"


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
