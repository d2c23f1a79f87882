import random
import time

import pytest
from hypothesis import HealthCheck, settings

from frobskew.fields import GF, PolyRing, RationalFunctionField

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

FINITE_FIELDS = [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1)]


@pytest.fixture
def rng():
    return random.Random(12345)


def all_rings():
    return [GF(2), GF(2, 2), GF(3, 2), PolyRing(2), RationalFunctionField(2)]


_SESSION_START = time.perf_counter()
SUITE_LIMIT = 120.0


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if not test_acceptance.RESULTS:
        return
    elapsed = time.perf_counter() - _SESSION_START
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(test_acceptance.RESULTS):
        tr.write_line(test_acceptance.RESULTS[n])
    verdict = "PASS" if elapsed < SUITE_LIMIT else "FAIL"
    tr.write_line(f"suite runtime {verdict}  {elapsed:.1f}s (limit {SUITE_LIMIT:.0f}s)")


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _SESSION_START > SUITE_LIMIT and exitstatus == 0:
        session.exitstatus = 1
