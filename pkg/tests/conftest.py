import numpy as np
import pytest

from fieldmediation.scenario import Scenario, Trajectory


def static_scenario(xa, xb, t_final, coupling=0.5, half_split=0.5, **kw):
    T = Trajectory.static
    return Scenario(
        T(xa + half_split, t_final), T(xa - half_split, t_final),
        T(xb + half_split, t_final), T(xb - half_split, t_final),
        coupling_a=coupling, coupling_b=coupling, **kw,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one acceptance line; shown live with -s and again in the terminal summary."""
    def emit(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        return passed
    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
