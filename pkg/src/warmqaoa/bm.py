"""Rank-2 Burer-Monteiro relaxation: one angle per vertex on the unit circle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph

__all__ = [
    "AngleSolution",
    "bm_value",
    "bm_gradient",
    "solve_bm_mc2",
    "vertex_at_top",
    "uniform_rotation",
    "project_angles",
    "warmest_margin",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class AngleSolution:
    theta: np.ndarray  # wrapped to [0, 2 pi)
    value: float
    iterations: int = 0
    converged: bool = True

    @property
    def n(self) -> int:
        return self.theta.size


def bm_value(g: Graph, theta) -> float:
    """sum over edges of (1 - cos(theta_j - theta_k)) / 2."""
    theta = np.asarray(theta, dtype=float)
    e = g.edge_array()
    return float(0.5 * np.sum(1.0 - np.cos(theta[e[:, 0]] - theta[e[:, 1]])))


def bm_gradient(g: Graph, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    e = g.edge_array()
    s = 0.5 * np.sin(theta[e[:, 0]] - theta[e[:, 1]])
    n = theta.size
    return np.bincount(e[:, 0], s, n) - np.bincount(e[:, 1], s, n)


def _ascend(g: Graph, theta: np.ndarray, lr: float, gtol: float, max_iter: int,
            b1: float = 0.9, b2: float = 0.999, eps: float = 1e-8):
    """Adam ascent; a step that lowers the objective is retried at half size.

    The shrink factor recovers geometrically after accepted steps.
    """
    m = np.zeros_like(theta)
    v = np.zeros_like(theta)
    val = bm_value(g, theta)
    scale = 1.0
    for t in range(1, max_iter + 1):
        grad = bm_gradient(g, theta)
        if np.max(np.abs(grad)) <= gtol:
            return theta, val, t - 1, True
        m = b1 * m + (1 - b1) * grad
        v = b2 * v + (1 - b2) * grad * grad
        step = lr * np.sqrt(1 - b2**t) / (1 - b1**t) * m / (np.sqrt(v) + eps)
        for _ in range(60):
            cand = theta + scale * step
            cval = bm_value(g, cand)
            if cval >= val:
                break
            scale *= 0.5
        else:
            return theta, val, t, False
        theta, val = cand, cval
        scale = min(1.0, 1.5 * scale)
    return theta, val, max_iter, bool(np.max(np.abs(bm_gradient(g, theta))) <= gtol)


def solve_bm_mc2(g: Graph, restarts: int = 10, seed=None, lr: float = 0.05,
                 gtol: float = 1e-6, max_iter: int = 5000) -> AngleSolution:
    """Best local optimum over ``restarts`` random starts."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    if isinstance(seed, np.random.Generator):
        children = seed.spawn(restarts)
    else:
        ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
        children = ss.spawn(restarts)
    best = None
    for child in children:
        theta0 = np.random.default_rng(child).uniform(0, TWO_PI, g.n)
        theta, val, it, ok = _ascend(g, theta0, lr, gtol, max_iter)
        if best is None or val > best.value:
            best = AngleSolution(np.mod(theta, TWO_PI), val, it, ok)
    return best


def vertex_at_top(sol: AngleSolution, index: int) -> AngleSolution:
    """Gauge-fix so that vertex ``index`` sits at angle 0."""
    if not 0 <= index < sol.n:
        raise ValueError(f"vertex {index} out of range")
    theta = np.mod(sol.theta - sol.theta[index], TWO_PI)
    theta[index] = 0.0
    return AngleSolution(theta, sol.value, sol.iterations, sol.converged)


def uniform_rotation(sol: AngleSolution, seed=None) -> AngleSolution:
    shift = np.random.default_rng(seed).uniform(0, TWO_PI)
    return AngleSolution(np.mod(sol.theta + shift, TWO_PI), sol.value, sol.iterations, sol.converged)


def project_angles(sol: AngleSolution, seed=None) -> np.ndarray:
    """Random diameter rounding: bit 0 on the half-circle around a random direction."""
    phi = np.random.default_rng(seed).uniform(0, TWO_PI)
    return (np.cos(sol.theta - phi) < 0).astype(np.int8)


def warmest_margin(t) -> np.ndarray:
    """(1 - cos(t)/2)/2 - (3/4) t/pi; non-negative on [0, pi]."""
    t = np.asarray(t, dtype=float)
    return 0.5 * (1.0 - 0.5 * np.cos(t)) - 0.75 * t / np.pi
