import sys
from pathlib import Path

import pytest

from dsq import data_dir
from dsq.algebra import check_disingquandle
from dsq.algebra.io import load
from dsq.algebra.tables import DisingquandleTable
from dsq.diagram import load_diagram

sys.path.insert(0, str(Path(__file__).parent))

LINKS = data_dir() / "links"
STRUCTURES = data_dir() / "structures"


def corpus_diagrams():
    return [load_diagram(p) for p in sorted(LINKS.glob("*.lnk"))]


def valid_structures():
    out = []
    for p in sorted(STRUCTURES.glob("*.dsq")):
        s = load(p)
        if isinstance(s, DisingquandleTable) and check_disingquandle(s).passed:
            out.append(s)
    return out


@pytest.fixture(scope="session")
def diagrams():
    return {d.name: d for d in corpus_diagrams()}


@pytest.fixture(scope="session")
def structures():
    return {s.name: s for s in valid_structures()}


@pytest.fixture(scope="session")
def z6():
    from dsq.constructors import build_z6_paper
    return build_z6_paper()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
