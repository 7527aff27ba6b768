"""Write the .gpg fixture corpus and its golden outputs under tests/fixtures/.

    python3 scripts/make_fixtures.py [--check]

With --check nothing is written; the script exits 1 if any golden file is stale.
"""

import argparse
import sys
from pathlib import Path

from gpoly.cli import POLYS, GraphFile
from gpoly.errors import GraphError, ResourceLimitError, UnsupportedOperation
from gpoly.fixtures import named, random_ribbon
from gpoly.gpgfile import dumps

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"
N_RANDOM = 20


class _Args:
    max_edges = None
    root = None
    conserve = None


def corpus():
    out = dict(named())
    for i in range(1, N_RANDOM + 1):
        R = random_ribbon(i, max_v=4, max_e=5, max_flags=3, connected=i % 2 == 0)
        out[f"r{i:02d}"] = R
    return out


def golden(R) -> str:
    gf = GraphFile(R.graph, R)
    lines = []
    for poly, (_, methods, fn) in POLYS.items():
        for m in methods:
            try:
                val = fn(gf, m, _Args()).render("text")
            except (UnsupportedOperation, GraphError, ResourceLimitError) as exc:
                val = f"n/a ({type(exc).__name__})"
            lines.append(f"{poly} {m}: {val}")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    a = ap.parse_args()
    stale = []
    for name, R in corpus().items():
        files = {ROOT / f"{name}.gpg": dumps(R), ROOT / "golden" / f"{name}.txt": golden(R)}
        for path, text in files.items():
            if a.check:
                if not path.exists() or path.read_text() != text:
                    stale.append(path.name)
            else:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(text)
    if stale:
        print("stale:", ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
