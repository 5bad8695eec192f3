"""Free massive scalar field in a periodic 1+1D box.

Modes are labelled by n in [-N, N] with k_n = 2 pi n / L and
omega_n = sqrt(m^2 + k_n^2).  The field operator is

    phi(t, x) = sum_n (a_n e^{-i w t + i k x} + h.c.) / sqrt(2 L w)

so every c-number kernel below is a mode sum in ascending n.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class FieldSpec:
    mass: float = 1.0
    box_length: float = 200.0
    mode_cutoff: int = 512
    smear_width: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ConfigError(f"field mass must be > 0, got {self.mass}")
        if not self.box_length > 0:
            raise ConfigError(f"box_length must be > 0, got {self.box_length}")
        if int(self.mode_cutoff) != self.mode_cutoff or self.mode_cutoff < 0:
            raise ConfigError(f"mode_cutoff must be a non-negative integer, got {self.mode_cutoff}")
        if self.smear_width < 0:
            raise ConfigError(f"smear_width must be >= 0, got {self.smear_width}")

    @property
    def n_modes(self) -> int:
        return 2 * self.mode_cutoff + 1

    def wavenumbers(self) -> np.ndarray:
        n = np.arange(-self.mode_cutoff, self.mode_cutoff + 1)
        return 2.0 * np.pi * n / self.box_length

    def frequencies(self) -> np.ndarray:
        k = self.wavenumbers()
        return np.sqrt(self.mass**2 + k**2)

    def form_factor(self) -> np.ndarray:
        """Fourier transform of the unit Gaussian smearing profile (all ones for point currents)."""
        k = self.wavenumbers()
        return np.exp(-0.5 * (k * self.smear_width) ** 2)


def mode_set(spec: FieldSpec) -> list[tuple[float, float]]:
    """Return ``(k_n, omega_n)`` pairs sorted by n."""
    return list(zip(spec.wavenumbers().tolist(), spec.frequencies().tolist()))


def pauli_jordan(spec: FieldSpec, dt, dx):
    """Commutator kernel: [phi(t, x), phi(t', x')] = i * pauli_jordan(t - t', x - x').

    Truncated mode sum  -sum_n cos(k_n dx) sin(w_n dt) / (L w_n).  Point field;
    ``smear_width`` is ignored here.  Accepts scalars or broadcastable arrays.
    """
    k = spec.wavenumbers()
    w = spec.frequencies()
    dt = np.asarray(dt, dtype=float)
    dx = np.asarray(dx, dtype=float)
    shape = np.broadcast(dt, dx).shape
    dt_f = np.broadcast_to(dt, shape).reshape(-1, 1)
    dx_f = np.broadcast_to(dx, shape).reshape(-1, 1)
    terms = np.cos(k * dx_f) * np.sin(w * dt_f) / (spec.box_length * w)
    out = -terms.sum(axis=1).reshape(shape)
    return out[()] if out.ndim == 0 else out


def wightman(spec: FieldSpec, dt, dx):
    """Vacuum two-point function <0| phi(t, x) phi(t', x') |0> as a truncated mode sum.

    W - conj(W) = i * pauli_jordan at any truncation, i.e. Im W = pauli_jordan / 2.
    """
    k = spec.wavenumbers()
    w = spec.frequencies()
    dt = np.asarray(dt, dtype=float)
    dx = np.asarray(dx, dtype=float)
    shape = np.broadcast(dt, dx).shape
    dt_f = np.broadcast_to(dt, shape).reshape(-1, 1)
    dx_f = np.broadcast_to(dx, shape).reshape(-1, 1)
    # symmetric mode set: e^{ikx} pairs into cos(kx)
    terms = np.cos(k * dx_f) * np.exp(-1j * w * dt_f) / (2.0 * spec.box_length * w)
    out = terms.sum(axis=1).reshape(shape)
    return out[()] if out.ndim == 0 else out


def pauli_jordan_continuum(mass: float, dt, dx, lightcone_value: float = 0.5):
    """Infinite-volume closed form -1/2 sgn(t) theta(t^2 - x^2) J0(m sqrt(t^2 - x^2)).

    ``lightcone_value`` is theta(0); 1/2 is the value any Fourier partial sum converges to.
    """
    from scipy.special import j0

    dt = np.asarray(dt, dtype=float)
    dx = np.asarray(dx, dtype=float)
    s2 = dt**2 - dx**2
    step = np.where(s2 > 0, 1.0, np.where(s2 == 0, lightcone_value, 0.0))
    out = -0.5 * np.sign(dt) * step * j0(mass * np.sqrt(np.clip(s2, 0.0, None)))
    return out[()] if out.ndim == 0 else out
