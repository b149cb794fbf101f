import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from coringlab.io import load_bundled  # noqa: E402

settings.register_profile("repo", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

VALID = ("trivial_f2", "trivial_q", "f2_f4_sweedler", "qx2_sweedler",
         "flip_entwining", "superflip_entwining", "cobar_g0")
GROUPLIKE = VALID[:-1]
MUTATED = ("broken_counit", "broken_balancing")

ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def instances():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_bundled(name)
        return cache[name]
    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
