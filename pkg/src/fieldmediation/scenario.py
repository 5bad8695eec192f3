"""Branch trajectories, local currents and causal classification.

Each object A, B is superposed over two branches R and L.  A branch is a
piecewise-linear worldline with a piecewise-constant real weight s(t) that
multiplies the coupling (the classical stand-in for the internal quantity
carried by the current).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, DomainError

_NORM_TOL = 1e-12


class Causality(enum.Enum):
    SPACELIKE = "Spacelike"
    CAUSALLY_CONNECTED = "CausallyConnected"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Trajectory:
    """Worldline ``nodes = ((t0, x0), (t1, x1), ...)`` plus weight steps ``((t_start, s), ...)``."""

    nodes: tuple
    weights: tuple = ((0.0, 1.0),)

    def __post_init__(self):
        nodes = tuple((float(t), float(x)) for t, x in self.nodes)
        weights = tuple((float(t), float(s)) for t, s in self.weights)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if len(nodes) < 2:
            raise ConfigError("trajectory needs at least two nodes")
        t = np.array([p[0] for p in nodes])
        x = np.array([p[1] for p in nodes])
        if t[0] != 0.0:
            raise ConfigError(f"first trajectory node must be at t=0, got t={t[0]}")
        if np.any(np.diff(t) <= 0):
            raise ConfigError("trajectory node times must be strictly increasing")
        if np.any(np.abs(np.diff(x) / np.diff(t)) >= 1.0):
            raise ConfigError("trajectory segment is not subluminal (|dx/dt| >= 1)")
        if not weights or weights[0][0] != 0.0:
            raise ConfigError("weight steps must start at t=0")
        wt = [w[0] for w in weights]
        if any(b <= a for a, b in zip(wt, wt[1:])):
            raise ConfigError("weight step times must be strictly increasing")
        if wt[-1] >= t[-1]:
            raise ConfigError("weight step starts at or after t_final")

    @classmethod
    def static(cls, x: float, t_final: float, weight: float = 1.0) -> Trajectory:
        return cls(((0.0, x), (t_final, x)), ((0.0, weight),))

    @property
    def t_final(self) -> float:
        return self.nodes[-1][0]

    def breakpoints(self) -> np.ndarray:
        """Sorted times where position kinks or weight jumps, including 0 and t_final."""
        pts = {p[0] for p in self.nodes} | {w[0] for w in self.weights}
        return np.array(sorted(pts))

    def position(self, t):
        t_nodes = [p[0] for p in self.nodes]
        x_nodes = [p[1] for p in self.nodes]
        return np.interp(t, t_nodes, x_nodes)

    def weight_on(self, t0: float, t1: float) -> float:
        """Weight on the open interval (t0, t1), which must not straddle a step."""
        return self.weight(0.5 * (t0 + t1))

    def weight(self, t):
        starts = np.array([w[0] for w in self.weights])
        vals = np.array([w[1] for w in self.weights])
        idx = np.searchsorted(starts, t, side="right") - 1
        return vals[np.clip(idx, 0, len(vals) - 1)]

    def shifted(self, dx: float) -> Trajectory:
        return replace(self, nodes=tuple((t, x + dx) for t, x in self.nodes))

    def pieces(self):
        """Yield ``(t0, t1, x0, velocity, weight)`` for each linear, constant-weight piece."""
        bp = self.breakpoints()
        for t0, t1 in zip(bp[:-1], bp[1:]):
            x0, x1 = self.position([t0, t1])
            yield t0, t1, x0, (x1 - x0) / (t1 - t0), float(self.weight_on(t0, t1))


def sample_current(traj: Trajectory, t: float) -> tuple[float, float]:
    """Position and weight of the branch current at time ``t``."""
    if not 0.0 <= t <= traj.t_final:
        raise DomainError(f"t={t} outside [0, {traj.t_final}]")
    return float(traj.position(t)), float(traj.weight(t))


def _normalised(amps, name: str) -> tuple[complex, complex]:
    r, l = complex(amps[0]), complex(amps[1])
    norm = abs(r) ** 2 + abs(l) ** 2
    if abs(norm - 1.0) > _NORM_TOL:
        raise ConfigError(f"{name} amplitudes not normalised: |R|^2 + |L|^2 = {norm!r}")
    return r, l


BALANCED = (1 / np.sqrt(2), 1 / np.sqrt(2))


@dataclass(frozen=True)
class Scenario:
    a_right: Trajectory
    a_left: Trajectory
    b_right: Trajectory
    b_left: Trajectory
    alpha: tuple = BALANCED
    beta: tuple = BALANCED
    coupling_a: float = 0.5
    coupling_b: float = 0.5
    t_final: float = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _normalised(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _normalised(self.beta, "beta"))
        tf = self.a_right.t_final if self.t_final is None else float(self.t_final)
        object.__setattr__(self, "t_final", tf)
        if not tf > 0:
            raise ConfigError(f"t_final must be > 0, got {tf}")
        for name in ("a_right", "a_left", "b_right", "b_left"):
            if getattr(self, name).t_final != tf:
                raise ConfigError(f"trajectory {name} ends at {getattr(self, name).t_final}, expected t_final={tf}")
        if self.coupling_a < 0 or self.coupling_b < 0:
            raise ConfigError("couplings must be >= 0")

    @property
    def branches_a(self) -> tuple[Trajectory, Trajectory]:
        return self.a_right, self.a_left

    @property
    def branches_b(self) -> tuple[Trajectory, Trajectory]:
        return self.b_right, self.b_left

    def breakpoints(self) -> np.ndarray:
        pts = np.concatenate([t.breakpoints() for t in (*self.branches_a, *self.branches_b)])
        return np.unique(pts)

    def swapped(self) -> Scenario:
        """Exchange the roles of A and B."""
        return replace(
            self, a_right=self.b_right, a_left=self.b_left, b_right=self.a_right, b_left=self.a_left,
            alpha=self.beta, beta=self.alpha, coupling_a=self.coupling_b, coupling_b=self.coupling_a,
        )

    def translated(self, dx: float) -> Scenario:
        return replace(self, **{n: getattr(self, n).shifted(dx) for n in ("a_right", "a_left", "b_right", "b_left")})

    def with_b_offset(self, dx: float) -> Scenario:
        return replace(self, b_right=self.b_right.shifted(dx), b_left=self.b_left.shifted(dx))


def _min_interval(pa, pb) -> float:
    """Exact minimum of |x_a(t) - x_b(t')| - |t - t'| over the rectangle of two linear pieces.

    The function is linear on each region where sign(x_a - x_b) and sign(t - t')
    are fixed, so its minimum sits on a corner, on an edge crossing of one of
    the two zero lines, or on their intersection.
    """
    a0, a1, xa, va = pa
    b0, b1, xb, vb = pb

    def u(t, s):
        return xa + va * (t - a0) - xb - vb * (s - b0)

    cands = [(a0, b0), (a0, b1), (a1, b0), (a1, b1)]
    for t in (a0, a1):
        cands.append((t, t))  # t - t' = 0
        if abs(vb) > 1e-12:  # tinier slopes shift the minimum by < 1e-12 * duration
            cands.append((t, b0 + (xa + va * (t - a0) - xb) / vb))
    for s in (b0, b1):
        cands.append((s, s))
        if abs(va) > 1e-12:
            cands.append((a0 + (xb + vb * (s - b0) - xa) / va, s))
    # x_a(t) = x_b(t) with t = t'
    if abs(va - vb) > 1e-12:
        t = (xb - vb * b0 - xa + va * a0) / (va - vb)
        cands.append((t, t))
    best = np.inf
    eps = 1e-12
    for t, s in cands:
        if a0 - eps <= t <= a1 + eps and b0 - eps <= s <= b1 + eps:
            t = min(max(t, a0), a1)
            s = min(max(s, b0), b1)
            best = min(best, abs(u(t, s)) - abs(t - s))
    return best


def interval_gap(s: Scenario, smear_width: float = 0.0) -> float:
    """Minimum of |dx| - |dt| between the active supports of A and B (inf if either is inactive).

    Supports are inflated by 3 * smear_width each.
    """
    best = np.inf
    for ta in s.branches_a:
        pa_list = [p[:4] for p in ta.pieces() if p[4] != 0.0] if s.coupling_a else []
        for tb in s.branches_b:
            pb_list = [p[:4] for p in tb.pieces() if p[4] != 0.0] if s.coupling_b else []
            for pa in pa_list:
                for pb in pb_list:
                    best = min(best, _min_interval(pa, pb))
    return best - 6.0 * smear_width


def causal_classification(s: Scenario, margin: float = 0.0, smear_width: float = 0.0) -> Causality:
    """Spacelike iff every active A point is separated from every active B point by at least ``margin``.

    Lightlike contact (gap exactly 0) is classified as causally connected.
    """
    if margin < 0:
        raise DomainError("margin must be >= 0")
    gap = interval_gap(s, smear_width)
    if gap > 0 and gap >= margin:
        return Causality.SPACELIKE
    return Causality.CAUSALLY_CONNECTED
