"""Entanglement and correlation measures for two-qubit branch states.

Basis order is (RR, RL, LR, LL): the first label is object A's branch.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvariantViolation

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
ENTROPY_FLOOR = 1e-14


@dataclass(frozen=True)
class TwoQubitState:
    """Validated 4x4 density matrix over the branch basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise InvariantViolation("two-qubit shape", f"got {m.shape}")
        herm = np.abs(m - m.conj().T).max()
        if herm > HERMITIAN_TOL:
            raise InvariantViolation("Hermitian", f"max |rho - rho^dag| = {herm:.3e}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvariantViolation("unit trace", f"trace = {tr!r}")
        lo = np.linalg.eigvalsh(m).min()
        if lo < -PSD_TOL:
            raise InvariantViolation("positive semidefinite", f"min eigenvalue {lo:.3e}")
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def _mat(rho) -> np.ndarray:
    if isinstance(rho, TwoQubitState):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def partial_transpose(rho, subsystem: str = "B") -> np.ndarray:
    r = _mat(rho).reshape(2, 2, 2, 2)  # (a, b, a', b')
    if subsystem == "A":
        r = r.transpose(2, 1, 0, 3)
    elif subsystem == "B":
        r = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return r.reshape(4, 4)


def negativity(rho, subsystem: str = "B") -> float:
    """Sum of |negative eigenvalues| of the partial transpose; zero iff separable."""
    ev = np.linalg.eigvalsh(partial_transpose(rho, subsystem))
    return max(0.0, float(-ev[ev < 0].sum()))


def partial_trace(rho, keep: str) -> np.ndarray:
    r = _mat(rho).reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ajbj->ab", r)
    if keep == "B":
        return np.einsum("iaib->ab", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def von_neumann_entropy(rho) -> float:
    """Entropy in nats; eigenvalues in [-1e-10, 0) are clipped, lower ones are an error."""
    ev = np.linalg.eigvalsh(_mat(rho))
    if ev.min() < -PSD_TOL:
        raise InvariantViolation("positive semidefinite", f"min eigenvalue {ev.min():.3e}")
    ev = ev[ev > ENTROPY_FLOOR]
    return float(-np.sum(ev * np.log(ev)))


def mutual_information(rho) -> float:
    m = _mat(rho)
    mi = von_neumann_entropy(partial_trace(m, "A")) + von_neumann_entropy(partial_trace(m, "B")) - von_neumann_entropy(m)
    return max(mi, 0.0)


_YY = np.array([[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex)


def concurrence(rho) -> float:
    """Wootters concurrence of a (possibly mixed) two-qubit state."""
    m = _mat(rho)
    tilde = _YY @ m.conj() @ _YY
    ev = np.linalg.eigvals(m @ tilde)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def trace_distance(rho, sigma) -> float:
    d = _mat(rho) - _mat(sigma)
    return float(0.5 * np.abs(np.linalg.eigvalsh(0.5 * (d + d.conj().T))).sum())
