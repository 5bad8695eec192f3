"""Randomized and oracle-based checks shared by the ``verify`` command and the test suite."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .config import load_config
from .entanglement import negativity, trace_distance
from .field import FieldSpec, pauli_jordan, pauli_jordan_continuum
from .gaussian import reduced_density
from .oracle import dense_evolve, random_model
from .separability import build_rho, controlled_unitary_form, separable_decomposition

MODEL_DIMS = (2, 3, 4, 6)


def fixture_path(name: str):
    return resources.files("fieldmediation") / "fixtures" / name


@dataclass
class Check:
    name: str
    value: float
    limit: float
    passed: bool
    relation: str = "<="

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<44s} {self.value:.6e} {self.relation} {self.limit:.1e}"


def _le(name, value, limit):
    return Check(name, float(value), limit, bool(value <= limit), "<=")


def _ge(name, value, limit):
    return Check(name, float(value), limit, bool(value >= limit), ">=")


def model_dims(n: int):
    pairs = list(itertools.product(MODEL_DIMS, MODEL_DIMS))
    return [pairs[i % len(pairs)] for i in range(n)]


def separability_suite(seed: int = 0, n_models: int = 200) -> list[Check]:
    worst_neg = worst_rec = worst_wsum = worst_cu = 0.0
    min_weight = min_sigma = np.inf
    m_eigs_ok = True
    for i, (da, db) in enumerate(model_dims(n_models)):
        model = random_model(seed + i, da, db)
        rho = build_rho(model)
        dec = separable_decomposition(model)
        worst_neg = max(worst_neg, negativity(rho))
        worst_rec = max(worst_rec, np.abs(dec.reconstruct() - rho).max())
        worst_wsum = max(worst_wsum, abs(dec.weights.sum() - 1.0))
        min_weight = min(min_weight, dec.weights.min())
        min_sigma = min(min_sigma, min(np.linalg.eigvalsh(s).min() for s in dec.b_densities))
        err, eigs = controlled_unitary_form(model)
        worst_cu = max(worst_cu, err)
        m_eigs_ok &= eigs == (0.0, 1.0)
    return [
        _le("separability: max negativity(build_rho)", worst_neg, 1e-12),
        _le("separability: max reconstruction error", worst_rec, 1e-10),
        _le("separability: max |sum weights - 1|", worst_wsum, 1e-12),
        _ge("separability: min weight", min_weight, 0.0),
        _ge("separability: min eigenvalue of sigma_B", min_sigma, -1e-12),
        _le("controlled unitary: max reconstruction", worst_cu, 1e-10),
        Check("controlled unitary: m_A eigenvalues (0,1)", float(not m_eigs_ok), 0.0, m_eigs_ok, "=="),
    ]


def pauli_jordan_grid(step: float = 1.0, extent: float = 5.0):
    g = np.arange(-extent, extent + step / 2, step)
    t, x = np.meshgrid(g, g, indexing="ij")
    return t.ravel(), x.ravel()


def pauli_jordan_check(box_length: float = 400.0, mode_cutoff: int = 4096, mass: float = 1.0) -> list[Check]:
    spec = FieldSpec(mass, box_length, mode_cutoff)
    t, x = pauli_jordan_grid()
    err = np.abs(pauli_jordan(spec, t, x) - pauli_jordan_continuum(mass, t, x))
    spacelike = np.abs(x) > np.abs(t)
    return [
        _le("pauli-jordan: max |mode sum - closed form|", err.max(), 1e-3),
        _le("pauli-jordan: max |Delta| at spacelike points", np.abs(pauli_jordan(spec, t[spacelike], x[spacelike])).max(), 1e-3),
    ]


ORACLE_FIXTURES = {
    # name: (config, fock cutoff)
    "single-mode": ("oracle_single.cfg", 10),
    "two-mode": ("oracle_two.cfg", 6),
}
REFERENCE_QUAD_STEPS = 2048


def oracle_fixture(name: str):
    cfg_name, fock = ORACLE_FIXTURES[name]
    cfg = load_config(fixture_path(cfg_name))
    return cfg, fock


def oracle_check(name: str, steps: int = 256) -> list[Check]:
    cfg, fock = oracle_fixture(name)
    s, spec = cfg.scenario, cfg.field
    engine = reduced_density(s, spec, cfg.quad_step)
    reference = reduced_density(s, spec, s.t_final / REFERENCE_QUAD_STEPS)
    coarse = dense_evolve(s, spec, fock, steps)
    fine = dense_evolve(s, spec, fock, 2 * steps)
    ratio = trace_distance(coarse, reference) / trace_distance(fine, reference)
    return [
        _le(f"oracle {name}: trace distance to engine", trace_distance(coarse, engine), 1e-2),
        _ge(f"oracle {name}: error ratio on halving dt", ratio, 4.0),
    ]


def run_all(seed: int = 0) -> list[Check]:
    checks = separability_suite(seed)
    checks += pauli_jordan_check()
    for name in ORACLE_FIXTURES:
        checks += oracle_check(name)
    return checks
