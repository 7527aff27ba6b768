"""Every polynomial and method on the fixture corpus, against frozen outputs."""

import importlib.util
from pathlib import Path

import pytest

from gpoly.gpgfile import parse

HERE = Path(__file__).parent
spec = importlib.util.spec_from_file_location("make_fixtures", HERE.parent / "scripts" / "make_fixtures.py")
make_fixtures = importlib.util.module_from_spec(spec)
spec.loader.exec_module(make_fixtures)

GOLDEN = sorted((HERE / "fixtures" / "golden").glob("*.txt"))


@pytest.mark.parametrize("path", GOLDEN, ids=lambda p: p.stem)
def test_golden(path):
    gf = parse(HERE / "fixtures" / f"{path.stem}.gpg")
    assert make_fixtures.golden(gf.ribbon if gf.is_ribbon else gf.graph) == path.read_text()


def test_corpus_complete():
    assert {p.stem for p in GOLDEN} == set(make_fixtures.corpus())
