"""Goemans-Williamson: primal-dual interior-point SDP, Gram vectors, hyperplane rounding."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import linalg

from .graphs import Graph, laplacian

__all__ = [
    "NumericalBreakdown",
    "SdpState",
    "GramVectors",
    "solve_sdp",
    "gram_vectors",
    "random_projection",
    "batch_cuts",
    "gw_solve",
    "GWResult",
    "projections_to_match",
    "best_of_stream",
    "best_of_prefixes",
    "dump_sdp",
]

log = logging.getLogger(__name__)

INIT_DUAL_SCALE = 4.4
STEP_FRACTION = 0.98
BACKTRACK = 0.8
EIG_FLOOR = 1e-10
ROUNDING_CHUNK = 2048


class NumericalBreakdown(RuntimeError):
    def __init__(self, msg: str, state: SdpState | None = None):
        super().__init__(msg)
        self.state = state


@dataclass(frozen=True, eq=False)
class SdpState:
    """Primal-dual iterate for ``max L.Y  s.t. diag(Y) = 1/4, Y psd``.

    The dual is ``min sum(b)/4  s.t. Z = Diag(b) - L psd``.  ``objective``
    is the relaxed cut value ``L.Y``.
    """

    Y: np.ndarray
    b: np.ndarray
    Z: np.ndarray
    mu: float
    gap: float
    objective: float
    iterations: int = 0
    converged: bool = False
    history: tuple[float, ...] = ()

    @property
    def dual_objective(self) -> float:
        return float(self.b.sum() / 4.0)


@dataclass(frozen=True, eq=False)
class GramVectors:
    vectors: np.ndarray  # (n, r) unit rows

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


def _is_pd(M: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(M)
    except np.linalg.LinAlgError:
        return False
    return True


def _step_length(M: np.ndarray, dM: np.ndarray, max_halvings: int = 200) -> float:
    step = STEP_FRACTION
    for _ in range(max_halvings):
        if _is_pd(M + step * dM):
            return step
        step *= BACKTRACK
    return 0.0


def _relative_gap(a: np.ndarray, b: np.ndarray, obj: float) -> float:
    return abs(float(a @ b) - obj) / (1.0 + abs(obj))


def solve_sdp(g: Graph, tol: float = 1e-7, max_iter: int = 200) -> SdpState:
    """Primal-dual path following for the MaxCut relaxation.

    Both iterates stay feasible (the Newton step keeps ``diag(Y)`` fixed and
    ``Z = Diag(b) - L`` exactly), so the duality gap is ``Tr(YZ)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = g.n
    L = laplacian(g)
    a = np.full(n, 0.25)
    Y = np.diag(a)
    b = INIT_DUAL_SCALE * np.abs(L) @ a
    b[b == 0] = 1.0  # isolated vertices
    Z = np.diag(b) - L
    obj = float(np.sum(L * Y))
    history = [obj]
    if not _is_pd(Z):
        raise NumericalBreakdown("initial dual slack is not positive definite")

    def state(mu, it, ok):
        return SdpState(Y.copy(), b.copy(), Z.copy(), mu, _relative_gap(a, b, obj), obj, it, ok, tuple(history))

    mu = float(np.sum(Y * Z)) / (2 * n)
    for it in range(1, max_iter + 1):
        if _relative_gap(a, b, obj) <= tol:
            return state(mu, it - 1, True)
        mu = float(np.sum(Y * Z)) / (2 * n)
        try:
            Zi = linalg.cho_solve(linalg.cho_factor(Z), np.eye(n))
            Zi = 0.5 * (Zi + Zi.T)
            db = linalg.solve(Zi * Y, mu * np.diag(Zi) - a, assume_a="sym")
        except (linalg.LinAlgError, np.linalg.LinAlgError, ValueError) as exc:
            raise NumericalBreakdown(f"Newton system failed at iteration {it}: {exc}", state(mu, it, False)) from exc
        dZ = np.diag(db)
        dY = mu * Zi - Y - Zi @ dZ @ Y
        dY = 0.5 * (dY + dY.T)

        tp = _step_length(Y, dY)
        td = _step_length(Z, dZ)
        if tp == 0.0 or td == 0.0:
            raise NumericalBreakdown(f"no positive-definite step at iteration {it}", state(mu, it, False))
        Y = Y + tp * dY
        b = b + td * db
        Z = np.diag(b) - L
        obj = float(np.sum(L * Y))
        history.append(obj)

    gap = _relative_gap(a, b, obj)
    ok = gap <= tol
    if not ok:
        log.warning("SDP stopped after %d iterations with relative gap %.3g", max_iter, gap)
    return state(mu, max_iter, ok)


def dump_sdp(st: SdpState, path) -> None:
    """JSON diagnostic record of one solve."""
    rec = {
        "objective": st.objective,
        "dual_objective": st.dual_objective,
        "gap": st.gap,
        "mu": st.mu,
        "iterations": st.iterations,
        "converged": st.converged,
        "Y": st.Y.tolist(),
        "b": st.b.tolist(),
        "Z": st.Z.tolist(),
    }
    Path(path).write_text(json.dumps(rec))


def gram_vectors(Y: np.ndarray) -> GramVectors:
    """Unit vectors whose Gram matrix approximates ``4 Y``."""
    Y = np.asarray(Y, dtype=float)
    try:
        w, U = np.linalg.eigh(4.0 * 0.5 * (Y + Y.T))
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdown(f"eigendecomposition failed: {exc}") from exc
    w = np.where(w > EIG_FLOOR, w, 0.0)
    keep = w > 0
    V = U[:, keep] * np.sqrt(w[keep])
    norms = np.linalg.norm(V, axis=1)
    if np.any(norms == 0):
        raise NumericalBreakdown("Gram vector with zero norm")
    return GramVectors(V / norms[:, None])


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_projection(v: GramVectors, seed=None) -> np.ndarray:
    """Bit 0 on the non-negative side of a uniformly random hyperplane."""
    r = _rng(seed).standard_normal(v.vectors.shape[1])
    return (v.vectors @ r < 0).astype(np.int8)


def batch_cuts(g: Graph, bits: np.ndarray) -> np.ndarray:
    """Cut values of a (batch, n) array of assignments."""
    e = g.edge_array()
    return np.count_nonzero(bits[:, e[:, 0]] != bits[:, e[:, 1]], axis=1)


def _rounding_stream(g: Graph, v: GramVectors, rng: np.random.Generator, count: int):
    """Yield (bits, cuts) blocks; the concatenation does not depend on the block size."""
    done = 0
    while done < count:
        size = min(ROUNDING_CHUNK, count - done)
        R = rng.standard_normal((size, v.vectors.shape[1]))
        bits = (R @ v.vectors.T < 0).astype(np.int8)
        yield bits, batch_cuts(g, bits)
        done += size


@dataclass(frozen=True, eq=False)
class GWResult:
    best: np.ndarray
    cut: int
    sdp_objective: float
    cuts: np.ndarray  # per-projection cut values in stream order
    sdp: SdpState


def best_of_stream(g: Graph, v: GramVectors, projections: int, seed=None):
    """Best assignment and all cut values from ``projections`` roundings."""
    if projections < 1:
        raise ValueError("need at least one projection")
    rng = _rng(seed)
    best_bits, best_cut, cuts = None, -1, []
    for bits, c in _rounding_stream(g, v, rng, projections):
        cuts.append(c)
        i = int(np.argmax(c))
        if c[i] > best_cut:
            best_cut, best_bits = int(c[i]), bits[i].copy()
    return best_bits, best_cut, np.concatenate(cuts)


def best_of_prefixes(g: Graph, v: GramVectors, checkpoints, seed=None) -> dict[int, tuple[np.ndarray, int]]:
    """Best (assignment, cut) among the first R roundings, for every R in ``checkpoints``."""
    marks = sorted(set(int(r) for r in checkpoints))
    if not marks or marks[0] < 1:
        raise ValueError("checkpoints must be positive")
    out = {}
    best_bits, best_cut, seen = None, -1, 0
    pending = iter(marks)
    mark = next(pending)
    for bits, c in _rounding_stream(g, v, _rng(seed), marks[-1]):
        for i in range(c.size):
            if c[i] > best_cut:
                best_cut, best_bits = int(c[i]), bits[i].copy()
            seen += 1
            while mark is not None and seen == mark:
                out[mark] = (best_bits, best_cut)
                mark = next(pending, None)
    return out


def gw_solve(g: Graph, projections: int = 1, seed=None, sdp: SdpState | None = None,
             tol: float = 1e-7) -> GWResult:
    """One SDP solve followed by ``projections`` independent hyperplane roundings."""
    st = sdp if sdp is not None else solve_sdp(g, tol=tol)
    v = gram_vectors(st.Y)
    best, cut, cuts = best_of_stream(g, v, projections, seed)
    return GWResult(best, cut, st.objective, cuts, st)


def projections_to_match(g: Graph, target: int, cap: int, seed=None,
                         sdp: SdpState | None = None, vectors: GramVectors | None = None) -> int:
    """Smallest number of roundings whose best cut reaches ``target`` (``cap`` if never)."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if target > g.m:
        return cap
    if vectors is None:
        vectors = gram_vectors((sdp if sdp is not None else solve_sdp(g)).Y)
    seen = 0
    for _, c in _rounding_stream(g, vectors, _rng(seed), cap):
        hit = np.flatnonzero(c >= target)
        if hit.size:
            return seen + int(hit[0]) + 1
        seen += c.size
    return cap
