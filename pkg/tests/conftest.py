"""Shared fixtures, plus the per-criterion summary printed after the run."""

import random

import pytest

from qnyquist import parse_tf
from qnyquist.verify import random_tf

CASE1 = "(2s^3+6s^2+2s+1)/(4s^3+5s^2+2s+1)"
CASE2 = "(s^2+12s+35)/(s*(s^4+12s^3+30s^2+28s+9))"

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (rep.when == "call" or rep.failed):
        return
    number, title = marker.args
    _, ok = _criteria.get(number, (title, True))
    _criteria[number] = (title, ok and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def case1():
    return parse_tf(CASE1)


@pytest.fixture(scope="session")
def case2():
    return parse_tf(CASE2)


def corpus(count, seed, **kwargs):
    rng = random.Random(seed)
    return [random_tf(rng, **kwargs) for _ in range(count)]
