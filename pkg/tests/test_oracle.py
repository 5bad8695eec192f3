from dataclasses import replace

import numpy as np
import pytest
import scipy.sparse as sp

from fieldmediation.entanglement import trace_distance
from fieldmediation.errors import ConfigError
from fieldmediation.field import FieldSpec
from fieldmediation.gaussian import reduced_density
from fieldmediation.oracle import dense_evolve, haar_unitary, ladder_operators, random_model
from fieldmediation.separability import unitarity_residual
from fieldmediation.verification import oracle_fixture

from conftest import static_scenario


def test_random_model_reproducible():
    a, b = random_model(42, 3, 4), random_model(42, 3, 4)
    for name in ("u_a_r", "u_a_l", "u_b_r", "u_b_l", "chi"):
        np.testing.assert_array_equal(getattr(a, name), getattr(b, name))
    assert a.alpha == b.alpha and a.beta == b.beta
    assert not np.array_equal(random_model(43, 3, 4).chi, a.chi)


def test_random_model_normalisation():
    for seed in range(20):
        m = random_model(seed, 6, 4)
        for u in (m.u_a_r, m.u_a_l, m.u_b_r, m.u_b_l):
            assert unitarity_residual(u) <= 1e-12
        assert abs(np.linalg.norm(m.chi) - 1) <= 1e-14


def test_haar_first_moment(rng):
    # E[|U_00|^2] = 1/d for Haar measure
    d = 3
    vals = [abs(haar_unitary(rng, d)[0, 0]) ** 2 for _ in range(4000)]
    assert np.mean(vals) == pytest.approx(1 / d, abs=0.02)


def test_ladder_operator_commutator():
    ops = ladder_operators(2, 4)
    a0, a1 = ops
    comm = (a0 @ a0.conj().T - a0.conj().T @ a0).toarray()
    # canonical below the truncation edge
    idx = [i for i in range(25) if i // 5 < 4]
    np.testing.assert_allclose(comm[np.ix_(idx, idx)], np.eye(len(idx)), atol=1e-14)
    assert sp.linalg.norm(a0 @ a1 - a1 @ a0) == 0


def test_guards():
    s = static_scenario(0, 2, 4.0)
    with pytest.raises(ConfigError):
        dense_evolve(s, FieldSpec(1.0, 10.0, 3), 4, 256)
    with pytest.raises(ConfigError):
        dense_evolve(s, FieldSpec(1.0, 10.0, 2), 12, 256)  # 13**5 states
    with pytest.raises(ConfigError):
        dense_evolve(s, FieldSpec(1.0, 10.0, 0), 4, 100)
    with pytest.raises(ConfigError):
        dense_evolve(s, FieldSpec(1.0, 10.0, 0), 0, 256)
    with pytest.raises(ConfigError):
        random_model(0, 0, 2)


def test_zero_coupling_matches_engine():
    s = static_scenario(0, 2, 4.0, coupling=0.0, alpha=(0.6, 0.8), beta=(0.8, -0.6))
    spec = FieldSpec(1.0, 10.0, 1)
    np.testing.assert_allclose(dense_evolve(s, spec, 3, 256), reduced_density(s, spec), atol=1e-15)


def test_single_mode_fixture_agrees_with_engine():
    cfg, fock = oracle_fixture("single-mode")
    engine = reduced_density(cfg.scenario, cfg.field, cfg.quad_step)
    assert trace_distance(dense_evolve(cfg.scenario, cfg.field, fock, 256), engine) <= 1e-6


def test_fock_truncation_converges():
    cfg, _ = oracle_fixture("single-mode")
    s = replace(cfg.scenario, coupling_a=0.6, coupling_b=0.6)
    ref = reduced_density(s, cfg.field, 4 / 2048)
    errs = [trace_distance(dense_evolve(s, cfg.field, f, 512), ref) for f in (2, 4, 8)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 1e-5
