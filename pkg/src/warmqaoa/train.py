"""Adam updates, bias-field rule and the level-1 training loops."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .engine import expectations, expected_cost
from .graphs import Graph, cut_value
from .variants import SQRT3_3, VariantConfig, encode_ws_ab, recovery_fields

__all__ = [
    "AdamState",
    "adam_init",
    "adam_step",
    "bias_gradient",
    "bias_state",
    "fd_gradient",
    "TrainOptions",
    "TrainReport",
    "train_ws_ab",
    "AngleOptions",
    "train_angles",
    "WS_AB_INIT",
    "WS_QAOA_INIT",
]

WS_AB_INIT = (4.2315, 1.0002)
WS_QAOA_INIT = (5.7665, 4.4898)


@dataclass(frozen=True, eq=False)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    lr0: float = 0.4
    b1: float = 0.9
    b2: float = 0.999
    eps: float = 1e-8


def adam_init(size: int, lr0: float, b1: float = 0.9, b2: float = 0.999, eps: float = 1e-8) -> AdamState:
    return AdamState(np.zeros(size), np.zeros(size), 0, lr0, b1, b2, eps)


def adam_step(st: AdamState, grad, params) -> tuple[AdamState, np.ndarray]:
    """One bias-corrected Adam descent step; returns the new state and parameters."""
    grad = np.asarray(grad, dtype=float)
    params = np.asarray(params, dtype=float)
    if not (grad.shape == params.shape == st.m.shape):
        raise ValueError(f"shape mismatch: grad {grad.shape}, params {params.shape}, state {st.m.shape}")
    t = st.t + 1
    m = st.b1 * st.m + (1.0 - st.b1) * grad
    v = st.b2 * st.v + (1.0 - st.b2) * grad * grad
    lr = st.lr0 * np.sqrt(1.0 - st.b2**t) / (1.0 - st.b1**t) if st.b1 < 1 else st.lr0
    new = params - lr * m / (np.sqrt(v) + st.eps)
    return replace(st, m=m, v=v, t=t), new


def bias_gradient(h, z) -> np.ndarray:
    """Zero exactly when h_j = -sqrt(3)/3 <Z_j> (the basis-state fixed points)."""
    h = np.asarray(h, dtype=float)
    z = np.asarray(z, dtype=float)
    if h.shape != z.shape:
        raise ValueError("h and z must have the same shape")
    return h + SQRT3_3 * z


def bias_state(h, warm_bits) -> np.ndarray:
    """h_j > 0 -> bit 1, h_j < 0 -> bit 0; exact zeros keep the warm bit."""
    h = np.asarray(h, dtype=float)
    warm = np.asarray(warm_bits, dtype=np.int8)
    if h.shape != warm.shape:
        raise ValueError("h and warm bits must have the same length")
    return np.where(h > 0, 1, np.where(h < 0, 0, warm)).astype(np.int8)


def fd_gradient(f: Callable[[np.ndarray], float], x, step: float = 1e-5) -> np.ndarray:
    """Central differences."""
    if step <= 0:
        raise ValueError("step must be positive")
    x = np.asarray(x, dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = step
        grad[i] = (f(x + e) - f(x - e)) / (2.0 * step)
    return grad


@dataclass(frozen=True)
class TrainOptions:
    gamma0: float = WS_AB_INIT[0]
    beta0: float = WS_AB_INIT[1]
    lr_angles: float = 0.05
    lr0_h: float = 0.4
    max_iter: int = 1000
    tol: float = 1e-3
    energy_tol: float = 1e-6
    window: int = 10
    fd_step: float = 1e-5


@dataclass(frozen=True, eq=False)
class TrainReport:
    gamma1: float
    beta1: float
    h: np.ndarray
    bias_assignment: np.ndarray
    bias_cut: int
    best_cut: int
    best_assignment: np.ndarray
    warm_cut: int
    final_energy: float
    energy_trace: np.ndarray
    bias_cut_trace: np.ndarray
    grad_h_trace: np.ndarray
    iterations: int
    converged: bool
    options: TrainOptions = field(default_factory=TrainOptions)

    def write_trace(self, path) -> None:
        """CSV rows: iteration, energy, bias-state cut, max |g_h|."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iteration", "energy", "bias_cut", "grad_h_inf"])
            for i, (e, c, gh) in enumerate(zip(self.energy_trace, self.bias_cut_trace, self.grad_h_trace), 1):
                w.writerow([i, repr(float(e)), int(c), repr(float(gh))])


def _settled(trace: list[float], window: int, tol: float) -> bool:
    # short runs compare against whatever history exists (needs two points)
    if len(trace) < 2:
        return False
    recent = trace[-(window + 1):]
    return max(recent) - min(recent) <= tol


def train_ws_ab(g: Graph, warm_bits, opts: TrainOptions | None = None, h0=None) -> TrainReport:
    """Joint Adam training of (gamma1, beta1) and the bias fields.

    Every iteration evaluates the closed-form energy and magnetizations,
    takes one angle step on finite-difference gradients, one bias-field step
    on ``h + sqrt(3)/3 <Z>``, and scores the resulting bias state.  The warm
    assignment is the iteration-0 candidate, so ``best_cut`` can never fall
    below it.
    """
    opts = opts or TrainOptions()
    warm = np.asarray(warm_bits, dtype=np.int8)
    if warm.size != g.n:
        raise ValueError("warm bits do not match the graph")
    h = recovery_fields(warm) if h0 is None else np.asarray(h0, dtype=float).copy()
    angles = np.array([opts.gamma0, opts.beta0], dtype=float)
    ast = adam_init(2, opts.lr_angles)
    hst = adam_init(g.n, opts.lr0_h)

    warm_cut = cut_value(g, warm)
    best_cut, best_bits = warm_cut, warm.copy()
    energies, cuts, ghs = [], [], []
    converged = False
    it = 0
    for it in range(1, opts.max_iter + 1):
        cfg = encode_ws_ab(warm, h)
        energy, z = expectations(g, cfg, angles[0], angles[1])
        grad_a = fd_gradient(lambda p: expected_cost(g, cfg, p[0], p[1]), angles, opts.fd_step)
        gh = bias_gradient(h, z)
        ast, angles = adam_step(ast, grad_a, angles)
        hst, h = adam_step(hst, gh, h)

        bits = bias_state(h, warm)
        c = cut_value(g, bits)
        if c > best_cut:
            best_cut, best_bits = c, bits
        energies.append(energy)
        cuts.append(c)
        ghs.append(float(np.max(np.abs(gh))))
        if ghs[-1] <= opts.tol and _settled(energies, opts.window, opts.energy_tol):
            converged = True
            break

    final_energy = expected_cost(g, encode_ws_ab(warm, h), angles[0], angles[1])
    bits = bias_state(h, warm)
    return TrainReport(
        gamma1=float(angles[0]), beta1=float(angles[1]), h=h,
        bias_assignment=bits, bias_cut=cut_value(g, bits),
        best_cut=best_cut, best_assignment=best_bits, warm_cut=warm_cut,
        final_energy=final_energy,
        energy_trace=np.array(energies), bias_cut_trace=np.array(cuts), grad_h_trace=np.array(ghs),
        iterations=it, converged=converged, options=opts,
    )


@dataclass(frozen=True)
class AngleOptions:
    lr: float = 0.05
    max_iter: int = 500
    gtol: float = 1e-6
    fd_step: float = 1e-5


def train_angles(g: Graph, cfg: VariantConfig, inits: Sequence[tuple[float, float]],
                 opts: AngleOptions | None = None) -> tuple[float, float, float]:
    """Multi-start Adam descent of <H_C> over (gamma1, beta1) with the encoding held fixed."""
    opts = opts or AngleOptions()
    if not len(inits):
        raise ValueError("need at least one initial point")
    f = lambda p: expected_cost(g, cfg, p[0], p[1])
    best = None
    for init in inits:
        x = np.asarray(init, dtype=float)
        st = adam_init(2, opts.lr)
        for _ in range(opts.max_iter):
            grad = fd_gradient(f, x, opts.fd_step)
            if np.max(np.abs(grad)) <= opts.gtol:
                break
            st, x = adam_step(st, grad, x)
        e = f(x)
        if best is None or e < best[2]:
            best = (float(x[0]), float(x[1]), float(e))
    return best
