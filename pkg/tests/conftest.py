import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from robustpd.graph import Graph, prufer_tree  # noqa: E402

_acceptance: dict[str, str] = {}


@st.composite
def connected_graphs(draw, min_n=2, max_n=7):
    """A random spanning tree plus some extra edges."""
    n = draw(st.integers(min_n, max_n))
    t = prufer_tree(n, draw(st.integers(0, 2**31))) if n > 1 else Graph(1)
    edges = set(t.edges())
    extra = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if extra:
        edges |= set(draw(st.lists(st.sampled_from(extra), max_size=len(extra), unique=True)))
    return Graph(n, sorted(edges))


@pytest.fixture
def k33():
    from robustpd.graph import complete_bipartite_graph
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def star16():
    from robustpd.graph import star_graph
    return star_graph(16)


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        if report.skipped:
            _acceptance[name] = "SKIP"
        else:
            _acceptance[name] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{_acceptance[name]}  {name}")
