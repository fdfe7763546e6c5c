"""Closed-form level-1 expectations for cubic graphs.

For an edge ``(j, k)`` the mixer rotates ``Z_j`` into
``C^Z Z_j + C^Y Y_j + C^X X_j``; the nine two-body terms ``E_PQ`` are the
expectations of ``P_j Q_k`` conjugated by the cost layer, evaluated in the
pre-rotated warm state.  That state is a product state whose qubit ``v`` has
``<Z_v> = z_v cos(delta_v)`` and ``<X_v> = z_v sin(delta_v)`` (``<Y_v> = 0``),
with ``z_v = +-1`` read off the warm bit.  Below these are ``c`` and ``x``.

Subgraph classes only matter when a ``Z`` string hits a shared neighbor
twice: ``Z_s Z_s = 1`` replaces the product ``c_s c_s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphs import EdgeNeighborhood, Graph, classify_edge
from .variants import VariantConfig

__all__ = [
    "MixerCoeffs",
    "mixer_coeffs",
    "PAIR_TERMS",
    "edge_pair_terms",
    "vertex_terms",
    "expected_cost",
    "expected_z",
    "expectations",
    "Structure",
    "structure",
]

PAIR_TERMS = ("ZZ", "ZY", "YZ", "ZX", "XZ", "YY", "XX", "YX", "XY")


@dataclass(frozen=True)
class MixerCoeffs:
    cz: np.ndarray | float
    cy: np.ndarray | float
    cx: np.ndarray | float


def mixer_coeffs(alpha, beta: float) -> MixerCoeffs:
    """Heisenberg image of Z under the tilted mixer layer."""
    alpha = np.asarray(alpha, dtype=float)
    sb2 = np.sin(beta) ** 2
    return MixerCoeffs(
        cz=1.0 - 2.0 * np.cos(alpha) ** 2 * sb2,
        cy=np.cos(alpha) * np.sin(2.0 * beta),
        cx=-np.sin(2.0 * alpha) * sb2,
    )


@dataclass(frozen=True)
class Structure:
    """Vectorized neighborhood tables for a cubic graph."""

    j: np.ndarray
    k: np.ndarray
    j1: np.ndarray
    j2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    shared1: np.ndarray  # j1 == k1 (classes B and C)
    shared2: np.ndarray  # j2 == k2 (class C)
    nbrs: np.ndarray  # (n, 3)

    @property
    def classes(self) -> np.ndarray:
        return np.where(self.shared2, "C", np.where(self.shared1, "B", "A"))


@lru_cache(maxsize=128)
def structure(g: Graph) -> Structure:
    g.require_cubic()
    rows = [classify_edge(g, e) for e in g.edges]
    col = lambda name: np.array([getattr(r, name) for r in rows], dtype=np.int64)
    cls = np.array([r.cls for r in rows])
    return Structure(
        col("j"), col("k"), col("j1"), col("j2"), col("k1"), col("k2"),
        shared1=cls != "A", shared2=cls == "C",
        nbrs=np.array(g.adjacency, dtype=np.int64).reshape(g.n, 3),
    )


def _pair_terms(c, x, j, k, j1, j2, k1, k2, shared1, shared2, gamma):
    """The nine E_PQ arrays, one entry per edge."""
    cg, sg = np.cos(gamma), np.sin(gamma)
    cg2, sg2 = cg * cg, sg * sg
    cj, ck = c[j], c[k]
    cj1, cj2, ck1, ck2 = c[j1], c[j2], c[k1], c[k2]
    xj, xk = x[j], x[k]
    xx = xj * xk

    # Z strings that may contain a repeated (shared) vertex
    p11 = np.where(shared1, 1.0, cj1 * ck1)
    p22 = np.where(shared2, 1.0, cj2 * ck2)
    t_jjk1 = np.where(shared1, cj2, cj1 * cj2 * ck1)
    t_jjk2 = np.where(shared2, cj1, cj1 * cj2 * ck2)
    t_kkj1 = np.where(shared1, ck2, ck1 * ck2 * cj1)
    t_kkj2 = np.where(shared2, ck1, ck1 * ck2 * cj2)
    quad = np.where(shared2, 1.0, np.where(shared1, cj2 * ck2, cj1 * cj2 * ck1 * ck2))

    E = {}
    E["ZZ"] = cj * ck
    E["ZY"] = sg * xk * (cg2 * (1.0 + cj * ck1 + cj * ck2) - sg2 * ck1 * ck2)
    E["YZ"] = sg * xj * (cg2 * (1.0 + ck * cj1 + ck * cj2) - sg2 * cj1 * cj2)
    E["ZX"] = xk * (cg2 * cg * cj - cg * sg2 * (ck1 + ck2 + cj * ck1 * ck2))
    E["XZ"] = xj * (cg2 * cg * ck - cg * sg2 * (cj1 + cj2 + ck * cj1 * cj2))
    E["YY"] = xx * cg2 * sg2 * (p11 + p22 + cj1 * ck2 + cj2 * ck1)
    E["XX"] = xx * (cg2 * cg2 - cg2 * sg2 * (cj1 * cj2 + ck1 * ck2) + sg2 * sg2 * quad)
    E["XY"] = xx * cg * sg * (cg2 * (ck1 + ck2) - sg2 * (t_jjk1 + t_jjk2))
    E["YX"] = xx * cg * sg * (cg2 * (cj1 + cj2) - sg2 * (t_kkj1 + t_kkj2))
    return E


def _prepared(cfg: VariantConfig):
    zc = cfg.zc
    return zc * np.cos(cfg.delta), zc * np.sin(cfg.delta)


def edge_pair_terms(nb: EdgeNeighborhood, cfg: VariantConfig, gamma: float) -> dict[str, float]:
    """The nine two-body expectations for one classified edge."""
    c, x = _prepared(cfg)
    E = _pair_terms(
        c, x, nb.j, nb.k, nb.j1, nb.j2, nb.k1, nb.k2,
        nb.cls in ("B", "C"), nb.cls == "C", gamma,
    )
    return {key: float(val) for key, val in E.items()}


def _vertex_terms(c, x, j, a, b, d, gamma):
    cg, sg = np.cos(gamma), np.sin(gamma)
    ca, cb, cd = c[a], c[b], c[d]
    ez = c[j]
    ey = x[j] * sg * (cg * cg * (ca + cb + cd) - sg * sg * ca * cb * cd)
    ex = x[j] * cg * (cg * cg - sg * sg * (ca * cb + ca * cd + cb * cd))
    return ez, ey, ex


def vertex_terms(j: int, neighbors, cfg: VariantConfig, gamma: float) -> tuple[float, float, float]:
    """(E_Z, E_Y, E_X) for vertex ``j`` with its three neighbors."""
    a, b, d = (int(v) for v in neighbors)
    c, x = _prepared(cfg)
    return tuple(float(v) for v in _vertex_terms(c, x, j, a, b, d, gamma))


def _check(g: Graph, cfg: VariantConfig) -> Structure:
    if cfg.n != g.n:
        raise ValueError(f"config has {cfg.n} qubits, graph has {g.n} vertices")
    return structure(g)


def expected_cost(g: Graph, cfg: VariantConfig, gamma: float, beta: float) -> float:
    """<H_C> with H_C = sum over edges of (Z_j Z_k - 1) / 2."""
    s = _check(g, cfg)
    return _cost(s, cfg, gamma, beta)


def _cost(s: Structure, cfg: VariantConfig, gamma: float, beta: float) -> float:
    c, x = _prepared(cfg)
    E = _pair_terms(c, x, s.j, s.k, s.j1, s.j2, s.k1, s.k2, s.shared1, s.shared2, gamma)
    C = mixer_coeffs(cfg.alpha, beta)
    coef = {"Z": C.cz, "Y": C.cy, "X": C.cx}
    zz = sum(coef[p][s.j] * coef[q][s.k] * E[p + q] for p, q in PAIR_TERMS)
    return float(0.5 * np.sum(zz - 1.0))


def expected_z(g: Graph, cfg: VariantConfig, gamma: float, beta: float) -> np.ndarray:
    """All <Z_j>, each evaluated once on the full three-neighbor light cone."""
    s = _check(g, cfg)
    return _z(s, cfg, gamma, beta)


def _z(s: Structure, cfg: VariantConfig, gamma: float, beta: float) -> np.ndarray:
    c, x = _prepared(cfg)
    j = np.arange(cfg.n)
    ez, ey, ex = _vertex_terms(c, x, j, s.nbrs[:, 0], s.nbrs[:, 1], s.nbrs[:, 2], gamma)
    C = mixer_coeffs(cfg.alpha, beta)
    return C.cz * ez + C.cy * ey + C.cx * ex


def expectations(g: Graph, cfg: VariantConfig, gamma: float, beta: float) -> tuple[float, np.ndarray]:
    s = _check(g, cfg)
    return _cost(s, cfg, gamma, beta), _z(s, cfg, gamma, beta)
