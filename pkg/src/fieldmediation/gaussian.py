"""Exact Gaussian evolution for c-number branch currents.

For a current linear in a free field the time-ordered exponential stops at
second order in the Magnus expansion, so every branch unitary is a mode-wise
displacement times a c-number phase:

    U_PQ = exp(i Theta_PQ) D(alpha^A_P + alpha^B_Q)

Theta_PQ collects the local influence phases of both branches and the A-B
cross phase.  Vacuum overlaps of these unitaries then follow from the
coherent-state algebra.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation
from .field import FieldSpec
from .quadrature import TimeGrid
from .scenario import Scenario, Trajectory

BRANCH_LABELS = ("RR", "RL", "LR", "LL")
DEFAULT_QUAD_STEPS = 512


def default_quad_step(t_final: float) -> float:
    return t_final / DEFAULT_QUAD_STEPS


class _Sampled:
    """A trajectory sampled on a time grid, with its mode phases e^{-i w t + i k x}."""

    def __init__(self, spec: FieldSpec, traj: Trajectory, coupling: float, grid: TimeGrid):
        self.x = traj.position(grid.t)
        self.j = coupling * traj.weight(grid.piece_midpoints())
        self.g = np.exp(-1j * np.outer(grid.t, spec.frequencies()) + 1j * np.outer(self.x, spec.wavenumbers()))


def _grid(quad_step: float, *trajs: Trajectory) -> TimeGrid:
    bp = np.unique(np.concatenate([t.breakpoints() for t in trajs]))
    return TimeGrid.build(bp, quad_step)


def _displacement(spec: FieldSpec, sampled: _Sampled, grid: TimeGrid) -> np.ndarray:
    # integrand per mode: j(t) conj(g) = j e^{i w t - i k x}
    amp = (grid.weights * sampled.j) @ np.conj(sampled.g)
    return -1j * amp * spec.form_factor() / np.sqrt(2.0 * spec.box_length * spec.frequencies())


def displacement(spec: FieldSpec, traj: Trajectory, coupling: float, quad_step: float) -> np.ndarray:
    """Coherent amplitudes alpha_k of the local branch unitary (first Magnus term), one per mode."""
    grid = _grid(quad_step, traj)
    return _displacement(spec, _Sampled(spec, traj, coupling, grid), grid)


def commutator_matrix(spec: FieldSpec, gx: np.ndarray, gy: np.ndarray) -> np.ndarray:
    """Smeared commutator kernel Delta(t_i - t_j, x_i - y_j) for all grid pairs.

    Uses Delta = sum_k F_k^2 Im(g_x conj(g_y)) / (L w_k), which equals the
    ``pauli_jordan`` mode sum (times the smearing form factor) because the
    mode set is symmetric in k.
    """
    d = spec.form_factor() ** 2 / (spec.box_length * spec.frequencies())
    return np.imag((gx * d) @ gy.conj().T)


def _influence(spec: FieldSpec, sx: _Sampled, sy: _Sampled, grid: TimeGrid, cum: np.ndarray, same: bool) -> float:
    delta_xy = commutator_matrix(spec, sx.g, sy.g)
    inner = (cum * delta_xy) @ sy.j
    total = np.dot(grid.weights * sx.j, inner)
    if not same:
        # Delta_yx[i, j] = -Delta_xy[j, i] by antisymmetry
        inner_yx = (cum * -delta_xy.T) @ sx.j
        total += np.dot(grid.weights * sy.j, inner_yx)
    return float(-0.5 * total)


def influence_phase(spec: FieldSpec, traj_x: Trajectory, traj_y: Trajectory, couplings, quad_step: float) -> float:
    """Second-order Magnus phase between two currents.

    ``traj_y is traj_x`` (or equal trajectories with equal couplings) gives the
    branch-local self phase; otherwise the symmetrised cross phase
    -1/2 int dt int_0^t dt' [j_x(t) Delta j_y(t') + j_y(t) Delta j_x(t')].
    """
    cx, cy = couplings
    same = traj_x == traj_y and cx == cy
    grid = _grid(quad_step, traj_x, traj_y)
    cum = grid.cumulative_matrix()
    sx = _Sampled(spec, traj_x, cx, grid)
    sy = sx if same else _Sampled(spec, traj_y, cy, grid)
    return _influence(spec, sx, sy, grid, cum, same)


@dataclass
class BranchData:
    """Everything needed to form the overlap matrix, exposed for diagnostics."""

    alpha_a: tuple  # displacement vectors, branches (R, L)
    alpha_b: tuple
    local_a: tuple  # self phases
    local_b: tuple
    cross: np.ndarray  # 2x2, cross[P, Q]

    def total_phase(self, p: int, q: int) -> float:
        return self.local_a[p] + self.local_b[q] + self.cross[p, q]

    def joint_displacement(self, p: int, q: int) -> np.ndarray:
        return self.alpha_a[p] + self.alpha_b[q]

    @property
    def cross_phase(self) -> float:
        """Entangling combination of the cross phases, RR + LL - RL - LR."""
        c = self.cross
        return float(c[0, 0] + c[1, 1] - c[0, 1] - c[1, 0])


def branch_data(s: Scenario, spec: FieldSpec, quad_step: float | None = None) -> BranchData:
    quad_step = default_quad_step(s.t_final) if quad_step is None else quad_step
    trajs = (*s.branches_a, *s.branches_b)
    grid = _grid(quad_step, *trajs)
    cum = grid.cumulative_matrix()
    sa = [_Sampled(spec, t, s.coupling_a, grid) for t in s.branches_a]
    sb = [_Sampled(spec, t, s.coupling_b, grid) for t in s.branches_b]
    alpha_a = tuple(_displacement(spec, x, grid) for x in sa)
    alpha_b = tuple(_displacement(spec, x, grid) for x in sb)
    local_a = tuple(_influence(spec, x, x, grid, cum, True) for x in sa)
    local_b = tuple(_influence(spec, x, x, grid, cum, True) for x in sb)
    cross = np.zeros((2, 2))
    for p, q in itertools.product(range(2), range(2)):
        cross[p, q] = _influence(spec, sa[p], sb[q], grid, cum, False)
    return BranchData(alpha_a, alpha_b, local_a, local_b, cross)


def overlaps_from_data(data: BranchData) -> np.ndarray:
    """M[(P,Q),(P',Q')] = <0| U'_{P'Q'} U_{PQ} |0> with U' the adjoint."""
    idx = list(itertools.product(range(2), range(2)))
    m = np.empty((4, 4), dtype=complex)
    for a, (p, q) in enumerate(idx):
        al = data.joint_displacement(p, q)
        for b, (pp, qq) in enumerate(idx):
            be = data.joint_displacement(pp, qq)
            phase = data.total_phase(p, q) - data.total_phase(pp, qq) + np.imag(np.vdot(be, al))
            diff = al - be
            m[a, b] = np.exp(1j * phase - 0.5 * np.real(np.vdot(diff, diff)))
    return m


def branch_overlaps(s: Scenario, spec: FieldSpec, quad_step: float | None = None) -> np.ndarray:
    """4x4 vacuum overlap matrix of the branch unitaries in basis order RR, RL, LR, LL."""
    return overlaps_from_data(branch_data(s, spec, quad_step))


def amplitude_vector(s: Scenario) -> np.ndarray:
    return np.kron(np.asarray(s.alpha), np.asarray(s.beta))


def density_from_overlaps(s: Scenario, overlaps: np.ndarray) -> np.ndarray:
    amp = amplitude_vector(s)
    rho = np.outer(amp, amp.conj()) * overlaps
    # symmetrise away rounding so downstream Hermiticity checks are exact
    rho = 0.5 * (rho + rho.conj().T)
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -1e-10:
        raise InvariantViolation("reduced density positive semidefinite", f"min eigenvalue {lo:.3e}")
    return rho


def reduced_density(s: Scenario, spec: FieldSpec, quad_step: float | None = None) -> np.ndarray:
    """Reduced trajectory density matrix rho[(P,Q),(P',Q')] for the vacuum field."""
    return density_from_overlaps(s, branch_overlaps(s, spec, quad_step))
