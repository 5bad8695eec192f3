"""Finite-dimensional separability machinery for branch-controlled unitaries.

Object A's branch P applies U_{A_P} to its local mediator space (internal
degrees of freedom plus the field modes it touches); likewise for B.  With
V = U_{A_R}^dag U_{A_L} the reduced branch state is rebuilt from the spectral
resolution of V as an explicit mixture of product states, and the controlled
unitary for A is re-expressed as U_{A_R} exp(-i m_A (x) X_F).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvariantViolation, NumericError

UNITARY_TOL = 1e-12
CLUSTER_TOL = 1e-9
WEIGHT_FLOOR = 1e-14


def unitarity_residual(u: np.ndarray) -> float:
    return float(np.abs(u.conj().T @ u - np.eye(len(u))).max())


@dataclass(frozen=True)
class ControlledUnitaryModel:
    dim_a: int
    dim_b: int
    u_a_r: np.ndarray
    u_a_l: np.ndarray
    u_b_r: np.ndarray
    u_b_l: np.ndarray
    chi: np.ndarray
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        for name, dim in (("u_a_r", self.dim_a), ("u_a_l", self.dim_a), ("u_b_r", self.dim_b), ("u_b_l", self.dim_b)):
            u = np.asarray(getattr(self, name), dtype=complex)
            if u.shape != (dim, dim):
                raise NumericError(f"{name} has shape {u.shape}, expected {(dim, dim)}")
            res = unitarity_residual(u)
            if res > UNITARY_TOL:
                raise NumericError(f"{name} is not unitary (residual {res:.3e})")
            object.__setattr__(self, name, u)
        chi = np.asarray(self.chi, dtype=complex).ravel()
        if chi.shape != (self.dim_a * self.dim_b,):
            raise NumericError(f"chi has length {chi.size}, expected {self.dim_a * self.dim_b}")
        if abs(np.linalg.norm(chi) - 1.0) > UNITARY_TOL:
            raise NumericError("chi is not a unit vector")
        object.__setattr__(self, "chi", chi)
        for name in ("alpha", "beta"):
            amps = tuple(complex(a) for a in getattr(self, name))
            if abs(abs(amps[0]) ** 2 + abs(amps[1]) ** 2 - 1.0) > UNITARY_TOL:
                raise NumericError(f"{name} amplitudes not normalised")
            object.__setattr__(self, name, amps)

    @property
    def branches_a(self):
        return self.u_a_r, self.u_a_l

    @property
    def branches_b(self):
        return self.u_b_r, self.u_b_l

    def with_a_unitaries(self, u_r, u_l) -> ControlledUnitaryModel:
        return ControlledUnitaryModel(self.dim_a, self.dim_b, u_r, u_l, self.u_b_r, self.u_b_l, self.chi, self.alpha, self.beta)


def _expect(model: ControlledUnitaryModel, op_a: np.ndarray, op_b: np.ndarray) -> complex:
    """<chi| op_a (x) op_b |chi> without forming the Kronecker product."""
    c = model.chi.reshape(model.dim_a, model.dim_b)
    return complex(np.vdot(c, op_a @ c @ op_b.T))


def build_rho(model: ControlledUnitaryModel) -> np.ndarray:
    """Reduced branch density matrix, basis (RR, RL, LR, LL)."""
    amp = np.kron(np.asarray(model.alpha), np.asarray(model.beta))
    idx = list(itertools.product(range(2), range(2)))
    rho = np.empty((4, 4), dtype=complex)
    for a, (p, q) in enumerate(idx):
        for b, (pp, qq) in enumerate(idx):
            va = model.branches_a[pp].conj().T @ model.branches_a[p]
            vb = model.branches_b[qq].conj().T @ model.branches_b[q]
            rho[a, b] = amp[a] * np.conj(amp[b]) * _expect(model, va, vb)
    return rho


def branch_product_state(model: ControlledUnitaryModel) -> np.ndarray:
    """Full joint state sum_PQ alpha_P beta_Q |PQ> (x) (U_{A_P} (x) U_{B_Q}) |chi>, shape (4, dim_a*dim_b)."""
    c = model.chi.reshape(model.dim_a, model.dim_b)
    rows = []
    for p, q in itertools.product(range(2), range(2)):
        evolved = model.branches_a[p] @ c @ model.branches_b[q].T
        rows.append(model.alpha[p] * model.beta[q] * evolved.ravel())
    return np.array(rows)


def _principal(theta: np.ndarray) -> np.ndarray:
    """Map angles into (-pi, pi]."""
    out = np.angle(np.exp(1j * theta))
    return np.where(out <= -np.pi, np.pi, out)


def relative_unitary(model: ControlledUnitaryModel) -> np.ndarray:
    """V_RL = U_{A_R}^dag U_{A_L}."""
    return model.u_a_r.conj().T @ model.u_a_l


def _cluster(phases: np.ndarray, tol: float) -> list[list[int]]:
    """Group indices whose unit-circle points lie within ``tol`` (chained, with wrap-around)."""
    order = list(np.argsort(phases))
    z = np.exp(1j * phases)
    groups = [[order[0]]]
    for i in order[1:]:
        if abs(z[i] - z[groups[-1][-1]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    if len(groups) > 1 and abs(z[groups[0][0]] - z[groups[-1][-1]]) <= tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def spectral_decompose(model: ControlledUnitaryModel, tol: float = CLUSTER_TOL) -> list[tuple[float, np.ndarray]]:
    """Eigenphases of V_RL with orthogonal spectral projectors, sorted by ascending phase."""
    v = relative_unitary(model)
    res = unitarity_residual(v)
    if res > 1e-10:
        raise NumericError(f"V_RL is not unitary (residual {res:.3e})")
    v_lr = model.u_a_l.conj().T @ model.u_a_r
    if np.abs(v_lr - v.conj().T).max() > 1e-12:
        raise InvariantViolation("V_LR = V_RL^dag")
    # complex Schur form of a normal matrix is diagonal with orthonormal eigenvectors
    t, z = scipy.linalg.schur(v, output="complex")
    eig = np.diag(t)
    phases = _principal(np.angle(eig))
    out = []
    for grp in _cluster(phases, tol):
        vecs = z[:, grp]
        theta = float(_principal(np.angle(np.mean(eig[grp] / np.abs(eig[grp])))))
        out.append((theta, vecs @ vecs.conj().T))
    out.sort(key=lambda e: e[0])
    return out


@dataclass
class SeparableDecomposition:
    """rho = sum_i weight_i |a_i><a_i| (x) b_density_i."""

    weights: np.ndarray
    thetas: np.ndarray
    a_states: np.ndarray  # (n, 2)
    b_densities: np.ndarray  # (n, 2, 2)

    def __len__(self):
        return len(self.weights)

    def entries(self):
        return list(zip(self.weights, self.thetas, self.a_states, self.b_densities))

    def reconstruct(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        for w, _, a, b in self.entries():
            rho += w * np.kron(np.outer(a, a.conj()), b)
        return rho


def separable_decomposition(model: ControlledUnitaryModel, tol: float = CLUSTER_TOL) -> SeparableDecomposition:
    """Explicit product-state mixture reproducing ``build_rho(model)``."""
    vb = {
        (q, qq): model.branches_b[qq].conj().T @ model.branches_b[q]
        for q, qq in itertools.product(range(2), range(2))
    }
    weights, thetas, a_states, b_dens = [], [], [], []
    total = 0.0
    for theta, proj in spectral_decompose(model, tol):
        mu = _expect(model, proj, np.eye(model.dim_b)).real
        total += mu
        if mu < WEIGHT_FLOOR:
            continue
        a = np.array([model.alpha[0], model.alpha[1] * np.exp(1j * theta)])
        sigma = np.empty((2, 2), dtype=complex)
        for q, qq in itertools.product(range(2), range(2)):
            sigma[q, qq] = model.beta[q] * np.conj(model.beta[qq]) * _expect(model, proj, vb[q, qq])
        weights.append(mu)
        thetas.append(theta)
        a_states.append(a)
        b_dens.append(sigma / mu)
    if abs(total - 1.0) > 1e-10:
        raise InvariantViolation("spectral weights sum to 1", f"sum = {total!r}")
    return SeparableDecomposition(np.array(weights), np.array(thetas), np.array(a_states), np.array(b_dens))


def mediator_generator(model: ControlledUnitaryModel, branch_shift: dict | None = None) -> np.ndarray:
    """Self-adjoint X_F with exp(-i X_F) = V_RL, principal branch.

    ``branch_shift`` maps eigenvalue index -> integer k, adding 2 pi k to that
    eigenphase (any choice is a valid generator).
    """
    v = relative_unitary(model)
    t, z = scipy.linalg.schur(v, output="complex")
    theta = _principal(np.angle(np.diag(t)))
    for i, k in (branch_shift or {}).items():
        theta[i] += 2 * np.pi * k
    return (z * -theta) @ z.conj().T


M_A = np.diag([0.0, 1.0])


def controlled_unitary(model: ControlledUnitaryModel) -> np.ndarray:
    """|R><R| (x) U_{A_R} + |L><L| (x) U_{A_L}."""
    return scipy.linalg.block_diag(model.u_a_r, model.u_a_l)


def controlled_unitary_form(model: ControlledUnitaryModel, branch_shift: dict | None = None) -> tuple[float, tuple[float, float]]:
    """Distance between the controlled unitary and U_{A_R} exp(-i m_A (x) X_F), plus eig(m_A)."""
    x_f = mediator_generator(model, branch_shift)
    rank_one = scipy.linalg.expm(-1j * np.kron(M_A, x_f))
    factored = np.kron(np.eye(2), model.u_a_r) @ rank_one
    err = float(np.linalg.norm(controlled_unitary(model) - factored, 2))
    m_eigs = np.linalg.eigvalsh(M_A)
    return err, (float(m_eigs[0]), float(m_eigs[1]))
