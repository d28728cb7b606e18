from __future__ import annotations

import random

from hypothesis import strategies as st

from closurehom.core import FinSpace


def random_space(rng: random.Random, n: int, p: float = 0.3, symmetric: bool = False) -> FinSpace:
    """Reflexive random closure on ``n`` points; symmetric if asked."""
    closures = [{x} for x in range(n)]
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if symmetric and y < x:
                continue
            if rng.random() < p:
                closures[x].add(y)
                if symmetric:
                    closures[y].add(x)
    return FinSpace(tuple(frozenset(c) for c in closures))


@st.composite
def spaces(draw, min_n: int = 1, max_n: int = 8, symmetric: bool = False) -> FinSpace:
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    p = draw(st.sampled_from([0.1, 0.3, 0.5, 0.8]))
    return random_space(random.Random(seed), n, p, symmetric)


@st.composite
def subsets(draw, X: FinSpace) -> frozenset[int]:
    return frozenset(draw(st.sets(st.integers(0, X.n - 1))) if X.n else set())


# -- acceptance reporting ------------------------------------------------------

import pytest

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:>2} {verdict}  {title} ({seconds:.1f}s)")
