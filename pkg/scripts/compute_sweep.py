"""Run ``gpoly compute`` for every polynomial, method and fixture; print all outputs in a fixed order.

    python3 scripts/compute_sweep.py [--jobs N] [--formats text,json,latex]

Each job calls the CLI entry point in a worker process and captures its
stdout and exit code, so the printed transcript is what a shell loop over
the same commands would produce.
"""

import argparse
import contextlib
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from gpoly.cli import POLYS, main

FIXTURES = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def commands(formats):
    for path in sorted(FIXTURES.glob("*.gpg")):
        for poly, (_, methods, _) in POLYS.items():
            for m in methods:
                for fmt in formats:
                    yield ["compute", "--poly", poly, "--graph", str(path), "--method", m, "--format", fmt]


def run_one(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue()


def sweep(jobs: int, formats) -> str:
    cmds = list(commands(formats))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(run_one, cmds, chunksize=4))
    else:
        results = [run_one(c) for c in cmds]
    lines = []
    for argv, (code, out) in zip(cmds, results):
        lines.append(f"$ {' '.join(argv[1:])} [{code}]\n{out}")
    return "".join(lines)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--formats", default="text,json,latex")
    a = ap.parse_args()
    sys.stdout.write(sweep(a.jobs, a.formats.split(",")))
