import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from latgap import _pykernels, kernels  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("default")

BACKENDS = ["python"]
try:
    from latgap import _kernels  # noqa: F401

    BACKENDS.insert(0, "cython")
except ImportError:  # extension not built; fallback only
    pass


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available enumeration kernel."""
    if request.param == "python":
        monkeypatch.setattr(kernels, "enumerate_ball", _pykernels.enumerate_ball)
        monkeypatch.setattr(kernels, "count_ball", _pykernels.count_ball)
    else:
        from latgap import _kernels as compiled

        monkeypatch.setattr(kernels, "enumerate_ball", compiled.enumerate_ball)
        monkeypatch.setattr(kernels, "count_ball", compiled.count_ball)
    return request.param


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
