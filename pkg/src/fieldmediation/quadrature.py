"""Composite Simpson rules on grids split at breakpoints.

Integrands here are smooth on each piece between breakpoints (position kinks,
weight jumps) and may jump across them, so each piece gets its own Simpson
panel set and boundary nodes appear twice, once per side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

MIN_STEPS = 16


def simpson_weights(n: int, h: float) -> np.ndarray:
    """Weights of the composite Simpson rule on ``n`` (even) intervals."""
    if n % 2 or n < 2:
        raise ValueError(f"Simpson needs an even number of intervals, got {n}")
    w = np.full(n + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * h / 3.0


def partial_weights(n: int, h: float) -> np.ndarray:
    """Weights integrating over the first ``n`` intervals, for any n >= 0.

    Odd n closes with Simpson's 3/8 rule on the last three intervals.  n = 1
    uses the quadratic through the first three nodes, so it returns three
    weights (pieces always have at least two intervals).
    """
    if n == 0:
        return np.zeros(1)
    if n == 1:
        return h / 12.0 * np.array([5.0, 8.0, -1.0])
    if n % 2 == 0:
        return simpson_weights(n, h)
    w = np.zeros(n + 1)
    if n > 3:
        w[: n - 2] += simpson_weights(n - 3, h)
    w[n - 3 :] += 3.0 * h / 8.0 * np.array([1.0, 3.0, 3.0, 1.0])
    return w


def check_step(t_final: float, quad_step: float) -> None:
    if not quad_step > 0:
        raise ConfigError(f"quadrature step must be > 0, got {quad_step}")
    if t_final / quad_step < MIN_STEPS * (1 - 1e-12):
        raise ConfigError(
            f"quadrature step {quad_step} gives fewer than {MIN_STEPS} steps over t_final={t_final}"
        )


@dataclass
class TimeGrid:
    """Nodes, piece index and Simpson weights over ``[0, t_final]``."""

    t: np.ndarray
    piece: np.ndarray
    weights: np.ndarray
    bounds: np.ndarray  # piece boundaries, len = n_pieces + 1

    @classmethod
    def build(cls, breakpoints, quad_step: float) -> TimeGrid:
        bp = np.unique(np.asarray(breakpoints, dtype=float))
        check_step(bp[-1] - bp[0], quad_step)
        ts, pieces, ws = [], [], []
        for i, (a, b) in enumerate(zip(bp[:-1], bp[1:])):
            n = max(2, math.ceil((b - a) / quad_step - 1e-9))
            n += n % 2
            ts.append(np.linspace(a, b, n + 1))
            pieces.append(np.full(n + 1, i))
            ws.append(simpson_weights(n, (b - a) / n))
        return cls(np.concatenate(ts), np.concatenate(pieces), np.concatenate(ws), bp)

    def __len__(self):
        return len(self.t)

    def piece_midpoints(self) -> np.ndarray:
        mids = 0.5 * (self.bounds[:-1] + self.bounds[1:])
        return mids[self.piece]

    def cumulative_matrix(self) -> np.ndarray:
        """Lower-triangular C with sum_j C[i, j] f(t_j) ~ integral of f over [0, t_i]."""
        m = len(self.t)
        c = np.zeros((m, m))
        start = 0
        carried = np.zeros(m)
        for p in range(len(self.bounds) - 1):
            idx = np.nonzero(self.piece == p)[0]
            n = len(idx) - 1
            h = (self.t[idx[-1]] - self.t[idx[0]]) / n
            for l in range(n + 1):
                row = carried.copy()
                pw = partial_weights(l, h)
                row[idx[0] : idx[0] + len(pw)] += pw
                c[idx[l]] = row
            carried = carried.copy()
            carried[idx] += self.weights[idx]
            start += n + 1
        return c
