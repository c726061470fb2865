from __future__ import annotations

import os
from functools import lru_cache

from hypothesis import HealthCheck, settings

from octoplanes import liecert as lc

settings.register_profile("repo", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@lru_cache(maxsize=None)
def lie_space(family: str, target: str):
    """Kernels are expensive; every test module shares one copy per target."""
    return lc.compute_space(family, target)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
