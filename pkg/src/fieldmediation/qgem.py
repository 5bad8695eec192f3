"""Newtonian branch phases and the four-branch interferometer state."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SingularityError
from .quadrature import TimeGrid

BRANCHES = ("R", "L")
PAIRS = ("RR", "RL", "LR", "LL")


@dataclass(frozen=True)
class Path3D:
    """Piecewise-linear 3D worldline, nodes ``((t, x, y, z), ...)`` starting at t = 0."""

    nodes: tuple

    def __post_init__(self):
        nodes = tuple(tuple(float(v) for v in p) for p in self.nodes)
        if len(nodes) < 2 or any(len(p) != 4 for p in nodes):
            raise ConfigError("3D path needs at least two (t, x, y, z) nodes")
        t = np.array([p[0] for p in nodes])
        if t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ConfigError("3D path times must start at 0 and increase strictly")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def static(cls, pos, t_final: float) -> Path3D:
        return cls(((0.0, *pos), (t_final, *pos)))

    @property
    def t_final(self) -> float:
        return self.nodes[-1][0]

    def times(self) -> np.ndarray:
        return np.array([p[0] for p in self.nodes])

    def position(self, t) -> np.ndarray:
        tn = self.times()
        pts = np.array([p[1:] for p in self.nodes])
        return np.stack([np.interp(t, tn, pts[:, i]) for i in range(3)], axis=-1)


def min_distance(pa: Path3D, pb: Path3D) -> float:
    """Exact minimum of |x_a(t) - x_b(t)|; the relative motion is linear between joint breakpoints."""
    bp = np.union1d(pa.times(), pb.times())
    best = np.inf
    for t0, t1 in zip(bp[:-1], bp[1:]):
        r0 = pa.position(t0) - pb.position(t0)
        v = (pa.position(t1) - pb.position(t1) - r0) / (t1 - t0)
        vv = float(v @ v)
        tau = 0.0 if vv == 0 else min(max(-float(r0 @ v) / vv, 0.0), t1 - t0)
        best = min(best, float(np.linalg.norm(r0 + v * tau)), float(np.linalg.norm(r0 + v * (t1 - t0))))
    return best


@dataclass(frozen=True)
class QgemConfig:
    mass_a: float
    mass_b: float
    newton_g: float
    t_final: float
    a_right: Path3D
    a_left: Path3D
    b_right: Path3D
    b_left: Path3D
    d_min: float = 1e-6

    def __post_init__(self):
        if self.mass_a <= 0 or self.mass_b <= 0:
            raise ConfigError("masses must be > 0")
        if self.newton_g < 0:
            raise ConfigError("newton_g must be >= 0")
        if not self.t_final > 0:
            raise ConfigError("t_final must be > 0")
        for name in ("a_right", "a_left", "b_right", "b_left"):
            if getattr(self, name).t_final != self.t_final:
                raise ConfigError(f"path {name} does not end at t_final={self.t_final}")

    def path(self, obj: str, branch: str) -> Path3D:
        return getattr(self, f"{obj}_{'right' if branch == 'R' else 'left'}")


def newton_phase(cfg: QgemConfig, branch_a: str, branch_b: str, quad_step: float | None = None) -> float:
    """Phase accumulated by the Newtonian potential between branch ``branch_a`` of A and ``branch_b`` of B."""
    if branch_a not in BRANCHES or branch_b not in BRANCHES:
        raise ValueError("branches must be 'R' or 'L'")
    pa, pb = cfg.path("a", branch_a), cfg.path("b", branch_b)
    dmin = min_distance(pa, pb)
    if dmin < cfg.d_min:
        raise SingularityError(f"branches A{branch_a}/B{branch_b} approach to {dmin:.3e} < d_min={cfg.d_min}")
    if cfg.newton_g == 0:
        return 0.0
    quad_step = cfg.t_final / 512 if quad_step is None else quad_step
    grid = TimeGrid.build(np.union1d(pa.times(), pb.times()), quad_step)
    dist = np.linalg.norm(pa.position(grid.t) - pb.position(grid.t), axis=-1)
    return float(cfg.newton_g * cfg.mass_a * cfg.mass_b * np.dot(grid.weights, 1.0 / dist))


def all_phases(cfg: QgemConfig, quad_step: float | None = None) -> np.ndarray:
    return np.array([newton_phase(cfg, p[0], p[1], quad_step) for p in PAIRS])


def phase_asymmetry(phases) -> float:
    """Phi_RR + Phi_LL - Phi_RL - Phi_LR, the only combination local phases cannot remove."""
    rr, rl, lr, ll = phases
    return float(rr + ll - rl - lr)


def qgem_state(phases, alpha, beta) -> np.ndarray:
    """Amplitudes alpha_P beta_Q e^{i Phi_PQ} over (RR, RL, LR, LL)."""
    amp = np.kron(np.asarray(alpha, dtype=complex), np.asarray(beta, dtype=complex))
    state = amp * np.exp(1j * np.asarray(phases, dtype=float))
    return state / np.linalg.norm(state)


def qgem_concurrence(state) -> float:
    """Concurrence 2 |psi_RR psi_LL - psi_RL psi_LR| of a pure two-qubit state."""
    rr, rl, lr, ll = np.asarray(state, dtype=complex)
    return float(min(1.0, 2.0 * abs(rr * ll - rl * lr)))


def static_phase(cfg: QgemConfig, distance: float) -> float:
    return cfg.newton_g * cfg.mass_a * cfg.mass_b * cfg.t_final / distance


def sin_half(delta_phi: float) -> float:
    return abs(math.sin(delta_phi / 2))
