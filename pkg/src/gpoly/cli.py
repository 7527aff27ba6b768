"""Command line: ``gpoly compute | check | info``.

Exit codes: 0 success, 1 check failure, 2 parse error, 3 unsupported
operation, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bollobas as B
from . import checks
from . import classical as C
from . import moyal as NC
from .errors import GraphError, ParseError, ResourceLimitError, UnsupportedOperation
from .fixtures import NAMED
from .gpgfile import GraphFile, parse
from .momentum import MomentumForm
from .polyring import MPoly, PolyParseError, parse_atom

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_LIMIT = 0, 1, 2, 3, 4

# name -> (needs ribbon, methods (first is the default), callable(gf, method, args))
POLYS = {
    "tutte": (False, ("subset", "delcontr"), lambda g, m, a: C.tutte(g.graph, m, limit=a.max_edges)),
    "z-multivariate": (False, ("subset", "delcontr"),
                       lambda g, m, a: C.z_multivariate(g.graph, m, limit=a.max_edges)),
    "forest": (False, ("subset",), lambda g, m, a: C.forest_poly(g.graph, a.max_edges)),
    "symanzik-u": (False, ("subset", "delcontr", "matrix"),
                   lambda g, m, a: C.symanzik_u(g.graph, m, limit=a.max_edges)),
    "symanzik-v": (False, ("subset",),
                   lambda g, m, a: C.symanzik_v(g.graph, "conserved" if a.conserve else "symmetric",
                                                a.max_edges)),
    "gen-u": (False, ("subset", "delcontr", "matrix"),
              lambda g, m, a: C.gen_u(g.graph, m, limit=a.max_edges)),
    "gen-v": (False, ("subset", "matrix"), lambda g, m, a: C.gen_v(g.graph, m, limit=a.max_edges)),
    "recover-u": (False, ("subset", "delcontr", "matrix"),
                  lambda g, m, a: C.recover_u(g.graph, a.root, m)),
    "recover-v": (False, ("subset", "delcontr", "matrix"), lambda g, m, a: C.recover_v(g.graph, m)),
    "w": (False, ("subset", "delcontr"), lambda g, m, a: C.w_categorified(g.graph, m, limit=a.max_edges)),
    "upsilon": (False, ("subset",), lambda g, m, a: C.upsilon(g.graph, a.max_edges)),
    "br": (True, ("subset", "delcontr"), lambda g, m, a: B.br(g.ribbon, m, a.max_edges)),
    "br-classical": (True, ("subset", "delcontr"), lambda g, m, a: B.br_classical(g.ribbon, m, a.max_edges)),
    "br-multivariate": (True, ("subset",), lambda g, m, a: B.br_multivariate(g.ribbon, a.max_edges)),
    "xi": (True, ("subset",), lambda g, m, a: B.xi(g.ribbon, a.max_edges)),
    "nc-u": (True, ("startree", "matrix", "br_limit", "delcontr"),
             lambda g, m, a: NC.nc_u(g.ribbon, m, a.root, a.max_edges)),
    "nc-x": (True, ("twostartree", "matrix"),
             lambda g, m, a: NC.nc_x(g.ribbon, m, a.root, a.conserve is not False, a.max_edges)),
    "nc-y": (True, ("startree", "matrix"),
             lambda g, m, a: NC.nc_y(g.ribbon, m, a.root, a.conserve is not False, a.max_edges)),
}


def load(path: str) -> GraphFile:
    """A .gpg path; a bare fixture name (np3, c3, ...) is accepted when no such file exists."""
    p = Path(path)
    if not p.exists() and path in NAMED:
        R = NAMED[path]()
        return GraphFile(R.graph, R)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def parse_eval(spec: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        if "=" not in item:
            raise ParseError(f"--eval expects name=value pairs, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[parse_atom(k)] = Fraction(v.strip())
        except (PolyParseError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"--eval: {exc}") from None
    return out


def render(value, fmt: str) -> str:
    if isinstance(value, (MPoly, MomentumForm)):
        return value.render(fmt)
    return str(value)


def cmd_compute(a) -> int:
    if a.poly not in POLYS:
        raise UnsupportedOperation(f"unknown polynomial {a.poly!r} (known: {', '.join(POLYS)})")
    ribbon_only, methods, fn = POLYS[a.poly]
    gf = load(a.graph)
    if ribbon_only and not gf.is_ribbon:
        raise UnsupportedOperation(f"{a.poly} needs a ribbon graph (add order lines)")
    method = a.method or methods[0]
    if method not in methods:
        raise UnsupportedOperation(f"method {method!r} not available for {a.poly} (use {', '.join(methods)})")
    value = fn(gf, method, a)
    if a.eval:
        vals = parse_eval(a.eval)
        value = value.evaluate(vals) if isinstance(value, MPoly) else \
            value.map_coeffs(lambda c: c.evaluate(vals))
    print(render(value, a.format))
    return EXIT_OK


def _metrics(R) -> dict:
    G = R.graph
    k, r, n = G.metrics()
    return {"V": G.V, "E": G.E, "k": k, "r": r, "n": n, "bc": R.bc(), "g": R.genus(),
            "broken": R.broken_faces(), "flags": [f.id for f in G.sorted_flags()]}


def cmd_info(a) -> int:
    gf = load(a.graph)
    if gf.is_ribbon:
        R = gf.ribbon
        if a.dual:
            R = R.dual()
        m = _metrics(R)
    else:
        if a.dual:
            raise UnsupportedOperation("the dual needs a ribbon graph")
        G = gf.graph
        k, r, n = G.metrics()
        m = {"V": G.V, "E": G.E, "k": k, "r": r, "n": n, "flags": [f.id for f in G.sorted_flags()]}
    if a.format == "json":
        print(json.dumps(m, separators=(",", ":")))
    else:
        print(" ".join(f"{k}={','.join(v) if isinstance(v, list) else v}" for k, v in m.items()))
    return EXIT_OK


def cmd_check(a) -> int:
    cfg = checks.CheckConfig(seed=a.seed, n_random=a.random, n_rosettes=a.rosettes,
                             max_edges=a.max_edges, jobs=a.jobs)
    results = checks.run((a.suite,), cfg)
    print(checks.report(results))
    return EXIT_OK if all(r.ok for r in results) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gpoly", description="Graph and ribbon-graph polynomials.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="compute one polynomial of a graph file")
    c.add_argument("--poly", required=True, help=", ".join(POLYS))
    c.add_argument("--graph", required=True, help="path to a .gpg file, or a fixture name")
    c.add_argument("--method", help="expansion route (default: the first listed for the polynomial)")
    c.add_argument("--format", choices=("text", "json", "latex"), default="text")
    c.add_argument("--root", help="root vertex (matrix routes) or derivative vertex (recover-u)")
    c.add_argument("--conserve", action=argparse.BooleanOptionalAction, default=None,
                   help="impose momentum conservation (nc-x/nc-y default on; conserved symanzik-v)")
    c.add_argument("--eval", help="substitute values, e.g. 'alpha[e1]=1/2,theta=2'")
    c.add_argument("--max-edges", type=int, default=None)
    c.add_argument("--seed", type=int, default=0, help="accepted for symmetry with check")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("check", help="run the cross-check suites")
    k.add_argument("--suite", choices=checks.SUITES + ("all",), default="all")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--random", type=int, default=100, help="random graphs per suite")
    k.add_argument("--rosettes", type=int, default=60, help="random rosettes for ribbon suites")
    k.add_argument("--max-edges", type=int, default=None, help="skip inputs with more edges")
    k.add_argument("--jobs", type=int, default=1)
    k.set_defaults(func=cmd_check)

    i = sub.add_parser("info", help="print graph and ribbon metrics")
    i.add_argument("--graph", required=True)
    i.add_argument("--dual", action="store_true")
    i.add_argument("--format", choices=("text", "json"), default="text")
    i.set_defaults(func=cmd_info)
    return ap


def main(argv=None) -> int:
    a = build_parser().parse_args(argv)
    try:
        return a.func(a)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UnsupportedOperation, GraphError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
