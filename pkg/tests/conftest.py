from fractions import Fraction
from math import gcd

import pytest

import oracles
from cmtangle.graphlat import WhiteGraph
from cmtangle.ingest import corpus, pd_to_white_graph
from cmtangle.recognition import find_embedding


@pytest.fixture(scope="session")
def knot_11a15():
    return pd_to_white_graph(corpus()["11a_15"]["pd"])


@pytest.fixture(scope="session")
def small_cases():
    """``(graph, p/q)`` for small bridgeless graphs and every slope with p = det."""
    out = []
    for nv, edges in oracles.small_graphs(5, 8):
        det = oracles.goeritz_det(nv, edges)
        for q in (2, 3, 4):
            if q < det <= 40 and gcd(det, q) == 1:
                out.append((WhiteGraph(nv, edges), Fraction(det, q)))
    return out


@pytest.fixture(scope="session")
def small_labelings(small_cases):
    out = []
    for g, pq in small_cases:
        lab = find_embedding(g, pq)
        if lab is not None:
            out.append((g, pq, lab))
    return out


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE_KEY, [])

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}: {detail}"
        lines.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
