import cmath
import math

import pytest
from hypothesis import settings, strategies as st

from entlab import OverlapState

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def polar(r, phi):
    return r * cmath.exp(1j * phi)


angles = st.floats(-math.pi, math.pi, allow_nan=False)
coefficients = st.builds(polar, st.floats(0.05, 10), angles)
overlaps = st.builds(polar, st.floats(0, 0.99), angles)


@st.composite
def overlap_states(draw):
    return OverlapState(draw(coefficients), draw(coefficients), draw(overlaps), draw(overlaps))


# -- acceptance summary: one line per criterion --------------------------------

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n, title = mark.args
    entry = _RESULTS.setdefault(n, {"title": title, "passed": 0, "failed": []})
    if rep.passed:
        entry["passed"] += 1
    else:
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        e = _RESULTS[n]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"[{status}] criterion {n}: {e['title']} ({e['passed']} checks passed"
        line += f", {len(e['failed'])} failed: {', '.join(e['failed'])})" if e["failed"] else ")"
        terminalreporter.write_line(line)
