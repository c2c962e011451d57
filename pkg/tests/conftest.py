from __future__ import annotations

import pytest
from hypothesis import strategies as st

from regionmoves.corpus import load_corpus
from regionmoves.diagram import add_kink, change_crossings, mirror

CORPUS = {e.name: e for e in load_corpus()}
KNOTS = [name for name, e in CORPUS.items() if e.diagram.is_knot]
LINKS = [name for name, e in CORPUS.items() if e.diagram.num_components >= 2]


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


def diagram(name):
    return CORPUS[name].diagram


@st.composite
def diagrams(draw, knots_only=False, max_regions=14):
    """A corpus diagram, possibly kinked, with random crossing changes."""
    names = KNOTS if knots_only else list(CORPUS)
    d = diagram(draw(st.sampled_from(names)))
    for _ in range(draw(st.integers(0, 2))):
        if d.m + 1 > max_regions:
            break
        d = add_kink(d, draw(st.sampled_from(d.edges)), draw(st.sampled_from((1, 3))))
    flips = draw(st.sets(st.integers(0, d.n - 1)))
    d = change_crossings(d, flips)
    if draw(st.booleans()):
        d = mirror(d)
    return d


@st.composite
def diagram_and_regions(draw, knots_only=False):
    d = draw(diagrams(knots_only=knots_only))
    return d, frozenset(draw(st.sets(st.integers(0, d.m - 1))))


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.report_lines():
        terminalreporter.write_line(line)
