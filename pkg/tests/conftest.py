import time

import numpy as np
import pytest

from gasjunction.gas import GasLaw, State
from gasjunction.junction import JunctionProblem


@pytest.fixture
def shallow():
    return GasLaw(5.0, 2.0)


@pytest.fixture
def air():
    return GasLaw(1.0, 1.4)


@pytest.fixture
def table1(shallow):
    states = (State(1.0, -1.0), State(1.0, 0.5), State(1.0, 0.5))
    return JunctionProblem(shallow, (1.0, 1.0, 1.0), states)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = pytest.StashKey[dict]()
_STARTED = pytest.StashKey[float]()
SUITE_BUDGET = 60.0


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}
    config.stash[_STARTED] = time.perf_counter()


@pytest.fixture
def criterion(request):
    """``criterion(n, ok, detail)`` records and prints one acceptance line."""
    lines = request.config.stash[_ACCEPTANCE]

    def report(n, ok, detail):
        lines[n] = (bool(ok), detail)
        print(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if not lines:
        return
    elapsed = time.perf_counter() - config.stash[_STARTED]
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(lines):
        ok, detail = lines[n]
        if n == 10:
            # the suite runtime is only known once every test has run
            ok = ok and elapsed < SUITE_BUDGET
            detail += f"; suite runtime {elapsed:.1f} s (limit {SUITE_BUDGET:.0f} s)"
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
