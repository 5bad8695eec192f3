import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fieldmediation.errors import ConfigError, SingularityError
from fieldmediation.qgem import (
    Path3D,
    QgemConfig,
    all_phases,
    min_distance,
    newton_phase,
    phase_asymmetry,
    qgem_concurrence,
    qgem_state,
    sin_half,
    static_phase,
)

S = Path3D.static


def _static_cfg(d_r=2.0, d_l=1.0, g=1.0, tf=3.0, ma=1.5, mb=0.7):
    return QgemConfig(
        ma, mb, g, tf,
        a_right=S((0, 0, 0), tf), a_left=S((0, 1, 0), tf),
        b_right=S((d_r, 0, 0), tf), b_left=S((0, 1 + d_l, 0), tf),
    )


def test_static_phase_closed_form():
    cfg = _static_cfg()
    phases = all_phases(cfg)
    dist = {"RR": 2.0, "RL": math.hypot(0, 2.0), "LR": math.hypot(2.0, 1.0), "LL": 1.0}
    for p, v in zip(("RR", "RL", "LR", "LL"), phases):
        assert v == pytest.approx(static_phase(cfg, dist[p]), abs=1e-10)


def test_zero_coupling_gives_zero_phase():
    assert np.all(all_phases(_static_cfg(g=0.0)) == 0.0)


def test_uniform_relative_motion_matches_antiderivative():
    # r(t) = (d, v t, 0): integral of 1/|r| is asinh(v T / d) / v
    d, v, tf = 0.8, 0.6, 5.0
    pa = S((0, 0, 0), tf)
    pb = Path3D(((0, d, 0, 0), (tf, d, v * tf, 0)))
    cfg = QgemConfig(1.0, 1.0, 1.0, tf, pa, pa, pb, pb)
    exact = math.asinh(v * tf / d) / v
    assert newton_phase(cfg, "R", "R", tf / 2048) == pytest.approx(exact, abs=1e-10)


def test_min_distance_exact_on_crossing_path():
    pa = S((0, 0, 0), 2.0)
    pb = Path3D(((0, -1, 0.3, 0), (2, 1, 0.3, 0)))
    assert min_distance(pa, pb) == pytest.approx(0.3, abs=1e-15)


def test_collision_raises_singularity():
    pa = S((0, 0, 0), 2.0)
    pb = Path3D(((0, -1, 0, 0), (2, 1, 0, 0)))
    cfg = QgemConfig(1.0, 1.0, 1.0, 2.0, pa, pa, pb, pb, d_min=1e-6)
    with pytest.raises(SingularityError):
        newton_phase(cfg, "R", "L")


def test_config_validation():
    with pytest.raises(ConfigError):
        QgemConfig(1, 1, 1, 2.0, S((0, 0, 0), 3.0), S((0, 0, 0), 3.0), S((1, 0, 0), 3.0), S((1, 0, 0), 3.0))
    with pytest.raises(ConfigError):
        Path3D(((0.5, 0, 0, 0), (1, 0, 0, 0)))
    with pytest.raises(ValueError):
        newton_phase(_static_cfg(), "X", "R")


def _schmidt_concurrence(state):
    s = np.linalg.svd(np.asarray(state).reshape(2, 2), compute_uv=False)
    return 2 * s[0] * s[1]


def test_concurrence_equals_sin_half_and_schmidt(rng):
    bal = (2**-0.5, 2**-0.5)
    for _ in range(100):
        phases = rng.uniform(-10, 10, size=4)
        state = qgem_state(phases, bal, bal)
        c = qgem_concurrence(state)
        assert c == pytest.approx(sin_half(phase_asymmetry(phases)), abs=1e-12)
        assert c == pytest.approx(_schmidt_concurrence(state), abs=1e-12)


def test_unbalanced_amplitudes_match_schmidt(rng):
    for _ in range(50):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        b = rng.normal(size=2) + 1j * rng.normal(size=2)
        state = qgem_state(rng.uniform(-5, 5, 4), a / np.linalg.norm(a), b / np.linalg.norm(b))
        assert np.linalg.norm(state) == pytest.approx(1.0, abs=1e-14)
        assert qgem_concurrence(state) == pytest.approx(_schmidt_concurrence(state), abs=1e-12)


phase = st.floats(-20, 20, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(phase, min_size=4, max_size=4), phase, phase, phase)
def test_concurrence_invariant_under_local_phases(phases, ga, gb, glob):
    bal = (2**-0.5, 2**-0.5)
    base = qgem_concurrence(qgem_state(phases, bal, bal))
    rr, rl, lr, ll = phases
    # a local phase on A's L branch and B's L branch plus a global shift
    moved = [rr + glob, rl + gb + glob, lr + ga + glob, ll + ga + gb + glob]
    assert qgem_concurrence(qgem_state(moved, bal, bal)) == pytest.approx(base, abs=1e-12)
    assert phase_asymmetry(moved) == pytest.approx(phase_asymmetry(phases), abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.lists(phase, min_size=4, max_size=4), st.integers(-3, 3))
def test_concurrence_two_pi_periodic(phases, k):
    bal = (2**-0.5, 2**-0.5)
    shifted = list(phases)
    shifted[0] += 2 * math.pi * k
    a = qgem_concurrence(qgem_state(phases, bal, bal))
    b = qgem_concurrence(qgem_state(shifted, bal, bal))
    assert a == pytest.approx(b, abs=1e-10)
    assert 0.0 <= a <= 1.0
