import pytest

from qcube.families import gen_complete_bipartite
from qcube.graph import Graph

_criteria: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria.setdefault(marker.args[0], []).append(rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        outcomes = _criteria[number]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}")


@pytest.fixture
def k23() -> Graph:
    """K_{2,3} with parts {a, b} and {c, d, e}, vertex order a..e."""
    return Graph.from_edges([(u, v) for u in "ab" for v in "cde"], vertices="abcde")


@pytest.fixture
def k23_generated() -> Graph:
    return gen_complete_bipartite(2, 3)
