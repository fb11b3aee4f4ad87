import json
import os
import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def load_fixture(name: str) -> dict:
    return json.loads((FIXTURES / name).read_text())


def graphs_up_to(n_max: int):
    from orthospace.greechie import GraphSpec

    for n in range(1, n_max + 1):
        pairs = list(combinations(range(n), 2))
        for m in range(1 << len(pairs)):
            yield GraphSpec(n, frozenset(p for i, p in enumerate(pairs) if m >> i & 1))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
