"""Scalar closed forms for two constrained WS-ab settings, kept as regression oracles.

``gamma_pi``: recovery bias fields, gamma = pi, beta = pi/2 + dbeta.
``delta_zero``: the same mixer tilts but no pre-rotation, so the cost layer
is a pure phase and beta = dbeta is the only free angle.

In both settings every qubit's Z picks up the factor ``(1 + 3 cos 2x) / 4``
and nothing else survives, so the energy is that factor squared times the
signed warm cut.
"""
from __future__ import annotations

import numpy as np

from .graphs import Graph
from .variants import VariantConfig, encode_ws_ab, recovery_fields

__all__ = ["MODES", "appendix_c_energy", "appendix_c_point"]

MODES = ("gamma_pi", "delta_zero")


def _mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def appendix_c_energy(g: Graph, warm_cut: int, dbeta: float, mode: str = "gamma_pi") -> float:
    _mode(mode)
    g.require_cubic()
    if not 0 <= warm_cut <= g.m:
        raise ValueError(f"warm cut {warm_cut} outside [0, {g.m}]")
    pref = ((1.0 + 3.0 * np.cos(2.0 * dbeta)) / 4.0) ** 2
    return float(pref * (g.m / 2.0 - warm_cut) - g.m / 2.0)


def appendix_c_point(warm_bits, dbeta: float, mode: str = "gamma_pi",
                     gamma: float | None = None) -> tuple[VariantConfig, float, float]:
    """(config, gamma, beta) at which the engine should reproduce :func:`appendix_c_energy`.

    ``gamma`` is fixed to pi in ``gamma_pi`` mode and free (default 0) otherwise.
    """
    _mode(mode)
    cfg = encode_ws_ab(warm_bits, recovery_fields(warm_bits))
    if mode == "gamma_pi":
        return cfg, np.pi, np.pi / 2 + dbeta
    flat = VariantConfig("ws_ab", cfg.warm_bits, cfg.alpha, np.zeros(cfg.n), h=cfg.h)
    return flat, 0.0 if gamma is None else float(gamma), float(dbeta)
