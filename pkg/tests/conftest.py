import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gkz_gevrey.corpus import corpus  # noqa: E402


@pytest.fixture(scope="session")
def random_corpus():
    return corpus(100)


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(30, seed=7)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = dict(getattr(mod, "RESULTS", None) or {})
    # criteria that crashed before recording a verdict
    for rep in terminalreporter.stats.get("failed", []) + terminalreporter.stats.get("error", []):
        name = rep.nodeid.rsplit("::", 1)[-1]
        if name.startswith("test_criterion_"):
            num = int(name.split("_")[2])
            results.setdefault(num, f"criterion {num:2d}: FAIL  crashed, see traceback above")
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
