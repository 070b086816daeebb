import pytest
from hypothesis import strategies as st

from majority_colouring.digraph import Digraph


@st.composite
def digraphs(draw, max_n=8, min_n=0):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph(n, [a for a, k in zip(pairs, keep) if k])


# -- acceptance summary ------------------------------------------------------------

_criteria: dict = {}


def pytest_runtest_logreport(report):
    marker = _markers.get(report.nodeid)
    if marker is None or (report.when != "call" and report.outcome == "passed"):
        return
    num, title = marker
    outcomes = _criteria.setdefault(num, (title, []))[1]
    outcomes.append(report.outcome)


_markers: dict = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _markers[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, outcomes = _criteria[num]
        if "failed" in outcomes:
            outcome = "FAIL"
        elif all(o == "skipped" for o in outcomes):
            outcome = "SKIPPED"
        else:
            outcome = "PASS"
        terminalreporter.write_line(f"criterion {num:>2}: {outcome:<7} {title}")
