import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fieldmediation.errors import ConfigError, DomainError
from fieldmediation.scenario import Causality, Scenario, Trajectory, causal_classification, sample_current

from conftest import static_scenario


def test_sample_current_static():
    traj = Trajectory.static(3.0, 5.0, weight=0.7)
    assert sample_current(traj, 2.2) == (3.0, 0.7)


def test_sample_current_interpolates():
    traj = Trajectory(((0, 0), (1, 0.5)))
    assert sample_current(traj, 0.5) == (0.25, 1.0)


def test_sample_current_weight_steps():
    traj = Trajectory(((0, 0), (2, 0.6)), ((0, 1.0), (1, 0.0)))
    x, s = sample_current(traj, 1.5)
    assert x == pytest.approx(0.45)
    assert s == 0.0
    assert sample_current(traj, 1.0)[1] == 0.0


@pytest.mark.parametrize("t", [-0.1, 5.01])
def test_sample_current_domain(t):
    with pytest.raises(DomainError):
        sample_current(Trajectory.static(0, 5.0), t)


@pytest.mark.parametrize("nodes", [((0, 0), (1, 1.0)), ((0.5, 0), (1, 0)), ((0, 0), (1, 0), (1, 0.1)), ((0, 0),)])
def test_trajectory_validation(nodes):
    with pytest.raises(ConfigError):
        Trajectory(nodes)


def test_scenario_normalisation_and_t_final():
    T = Trajectory.static
    with pytest.raises(ConfigError):
        Scenario(T(0, 1), T(1, 1), T(5, 1), T(6, 1), alpha=(1.0, 0.1))
    with pytest.raises(ConfigError):
        Scenario(T(0, 1), T(1, 1), T(5, 1), T(6, 2))


@pytest.mark.parametrize("xb, expected", [(10, Causality.SPACELIKE), (3, Causality.CAUSALLY_CONNECTED), (4, Causality.CAUSALLY_CONNECTED)])
def test_static_classification_examples(xb, expected):
    s = static_scenario(0.0, xb, 4.0, half_split=0.0)
    assert causal_classification(s, 0.0) is expected


def test_margin_and_smearing_shrink_gap():
    s = static_scenario(0.0, 10.0, 4.0, half_split=0.0)
    assert causal_classification(s, margin=5.9) is Causality.SPACELIKE
    assert causal_classification(s, margin=6.1) is Causality.CAUSALLY_CONNECTED
    assert causal_classification(s, smear_width=1.1) is Causality.CAUSALLY_CONNECTED


def test_inactive_segments_are_ignored():
    # A active on [0, 1), B at distance 3 active on [5, 6]: gap = 3 - 4 < 0
    a = Trajectory(((0, 0), (6, 0)), ((0, 1.0), (1, 0.0)))
    b = Trajectory(((0, 3), (6, 3)), ((0, 0.0), (5, 1.0)))
    assert causal_classification(Scenario(a, a, b, b)) is Causality.CAUSALLY_CONNECTED
    # B active only on [0, 1] as well: gap = 3 - 1 = 2
    b2 = Trajectory(((0, 3), (6, 3)), ((0, 1.0), (1, 0.0)))
    assert causal_classification(Scenario(a, a, b2, b2)) is Causality.SPACELIKE


def test_moving_branches_closest_approach():
    # A moves right at 0.5, B static at 4: at t=4 A is at 2, lightlike gap min over (t, t') pairs
    a = Trajectory(((0, 0), (4, 2)))
    b = Trajectory.static(8.0, 4.0)
    s = Scenario(a, a, b, b)
    # brute force over a fine grid
    t = np.linspace(0, 4, 801)
    ta, tb = np.meshgrid(t, t)
    brute = (np.abs(a.position(ta) - 8.0) - np.abs(ta - tb)).min()
    from fieldmediation.scenario import interval_gap
    assert interval_gap(s) == pytest.approx(brute, abs=1e-12)


traj_x = st.floats(-20, 20, allow_nan=False)


@st.composite
def scenarios(draw):
    tf = draw(st.floats(0.5, 6))
    mids = [tf * f for f in draw(st.lists(st.floats(0.1, 0.9), min_size=0, max_size=2, unique=True))]
    times = sorted({0.0, *mids, tf})

    def traj():
        x0 = draw(traj_x)
        xs = [x0]
        for a, b in zip(times, times[1:]):
            xs.append(xs[-1] + draw(st.floats(-0.9, 0.9)) * (b - a))
        return Trajectory(tuple(zip(times, xs)))

    return Scenario(traj(), traj(), traj(), traj())


@settings(max_examples=60, deadline=None)
@given(scenarios(), st.floats(-50, 50))
def test_classification_symmetric_and_translation_invariant(s, shift):
    c = causal_classification(s)
    assert causal_classification(s.swapped()) is c
    from fieldmediation.scenario import interval_gap
    assert interval_gap(s.translated(shift)) == pytest.approx(interval_gap(s), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.5, 10), st.floats(0.1, 8), st.floats(0.1, 8))
def test_longer_runs_never_become_spacelike(dist, t1, extra):
    short = static_scenario(0.0, dist, t1, half_split=0.0)
    long = static_scenario(0.0, dist, t1 + extra, half_split=0.0)
    if causal_classification(short) is Causality.CAUSALLY_CONNECTED:
        assert causal_classification(long) is Causality.CAUSALLY_CONNECTED
