"""Shared fixtures: cached brute point sets, hypothesis profile, and the
acceptance-criteria report lines printed in the terminal summary."""

import pytest
from hypothesis import HealthCheck, settings

from delpezzo4 import counting

settings.register_profile(
    "artifact",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("artifact")

_ACCEPTANCE_LINES = []
_BRUTE_CACHE = {}


def brute_points(B: int):
    """Memoized exhaustive U-point list; several tests share the same bound."""
    if B not in _BRUTE_CACHE:
        _BRUTE_CACHE[B] = counting.brute_enumerate(B, collect=True)[1]
    return _BRUTE_CACHE[B]


@pytest.fixture(scope="session")
def points_100():
    return brute_points(100)


@pytest.fixture(scope="session")
def points_500():
    return brute_points(500)


@pytest.fixture(scope="session")
def criterion_log():
    """Recorder for acceptance tests: one pass/fail line per criterion."""

    def record(num: int, name: str, ok: bool, detail: str = ""):
        verdict = "PASS" if ok else "FAIL"
        line = f"criterion {num:02d} {name}: {verdict}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append((num, line))
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
