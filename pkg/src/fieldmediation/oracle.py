"""Brute-force cross-checks.

``dense_evolve`` integrates each branch's Schrodinger equation on a truncated
Fock space with exponential-midpoint steps.  It deliberately shares no
quadrature or Magnus code with the Gaussian engine.
"""
from __future__ import annotations

import itertools
from functools import reduce

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .errors import ConfigError
from .field import FieldSpec
from .scenario import Scenario, sample_current
from .separability import ControlledUnitaryModel

MAX_ORACLE_CUTOFF = 2
MAX_FOCK_DIM = 2000
MIN_STEPS = 256


def ladder_operators(n_modes: int, fock_cutoff: int) -> list[sp.csr_matrix]:
    """Annihilation operators a_k on the truncated space (fock_cutoff + 1) ** n_modes."""
    d = fock_cutoff + 1
    a1 = sp.diags(np.sqrt(np.arange(1, d)), 1, format="csr")
    eye = sp.identity(d, format="csr")
    ops = []
    for k in range(n_modes):
        factors = [a1 if i == k else eye for i in range(n_modes)]
        ops.append(reduce(lambda x, y: sp.kron(x, y, format="csr"), factors))
    return ops


def _evolve_branch(spec, currents, ops, t_final, steps):
    """Vacuum evolved under H(t) = sum_X c_X s_X(t) phi(t, x_X(t))."""
    k = spec.wavenumbers()
    w = spec.frequencies()
    pref = spec.form_factor() / np.sqrt(2 * spec.box_length * w)
    adag = [a.conj().T.tocsr() for a in ops]
    psi = np.zeros(ops[0].shape[0], dtype=complex)
    psi[0] = 1.0
    dt = t_final / steps
    for n in range(steps):
        tm = (n + 0.5) * dt
        h = np.zeros(len(k), dtype=complex)
        for traj, c in currents:
            x, s = sample_current(traj, tm)
            h += c * s * np.exp(-1j * w * tm + 1j * k * x)
        h *= pref
        ham = sum(hk * a + np.conj(hk) * ad for hk, a, ad in zip(h, ops, adag))
        psi = expm_multiply(-1j * dt * ham, psi)
    return psi


def dense_evolve(s: Scenario, spec: FieldSpec, fock_cutoff: int, steps: int) -> np.ndarray:
    """Reduced branch density matrix from direct truncated-Fock evolution."""
    if spec.mode_cutoff > MAX_ORACLE_CUTOFF:
        raise ConfigError(f"oracle needs mode_cutoff <= {MAX_ORACLE_CUTOFF}, got {spec.mode_cutoff}")
    dim = (fock_cutoff + 1) ** spec.n_modes
    if fock_cutoff < 1 or dim > MAX_FOCK_DIM:
        raise ConfigError(f"Fock dimension {dim} outside [2, {MAX_FOCK_DIM}]")
    if steps < MIN_STEPS:
        raise ConfigError(f"oracle needs steps >= {MIN_STEPS}, got {steps}")
    ops = ladder_operators(spec.n_modes, fock_cutoff)
    states = []
    for p, q in itertools.product(range(2), range(2)):
        currents = [(s.branches_a[p], s.coupling_a), (s.branches_b[q], s.coupling_b)]
        states.append(_evolve_branch(spec, currents, ops, s.t_final, steps))
    gram = np.array([[np.vdot(sj, si) for sj in states] for si in states])  # <psi_P'Q'|psi_PQ>
    amp = np.kron(np.asarray(s.alpha), np.asarray(s.beta))
    rho = np.outer(amp, amp.conj()) * gram
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the phase of R's diagonal removed."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_model(seed: int, dim_a: int, dim_b: int) -> ControlledUnitaryModel:
    if dim_a < 1 or dim_b < 1:
        raise ConfigError("model dimensions must be >= 1")
    rng = np.random.default_rng(seed)
    u_a = [haar_unitary(rng, dim_a) for _ in range(2)]
    u_b = [haar_unitary(rng, dim_b) for _ in range(2)]
    chi = haar_state(rng, dim_a * dim_b)
    alpha = haar_state(rng, 2)
    beta = haar_state(rng, 2)
    return ControlledUnitaryModel(dim_a, dim_b, u_a[0], u_a[1], u_b[0], u_b[1], chi, tuple(alpha), tuple(beta))
