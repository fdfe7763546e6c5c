"""Self-check suites behind ``warmqaoa verify``.

Each suite returns a list of ``{"name", "passed", ...}`` records; the CLI
turns any failure into exit code 3.  They are small versions of the test
suite that can run against an installed copy.
"""
from __future__ import annotations

import itertools

import numpy as np

from .bm import solve_bm_mc2, warmest_margin
from .closedform import MODES, appendix_c_energy, appendix_c_point
from .engine import expectations, expected_cost
from .graphs import (complete_bipartite_33, complete_graph, cut_value, cycle_graph, generate_u3r,
                     petersen_graph, prism_graph)
from .gw import gw_solve, solve_sdp
from .oracle import (check_pi_gamma_identity, local_subgraph_expectation, maxcut_bruteforce,
                     statevector_expectation)
from .train import train_ws_ab
from .variants import encode_ws_ab, encode_ws_qaoa, random_config, recovery_fields

__all__ = ["SUITES", "oracle_suite", "closedform_suite", "guarantees_suite"]


def _check(name: str, passed: bool, **detail) -> dict:
    return {"name": name, "passed": bool(passed), **detail}


def _enumerate_maxcut(g) -> int:
    best = 0
    for bits in itertools.product((0, 1), repeat=g.n):
        best = max(best, cut_value(g, bits))
    return best


def oracle_suite(seed: int = 0, draws: int = 40) -> list[dict]:
    rng = np.random.default_rng(seed)
    de = dz = 0.0
    for _ in range(draws):
        g = generate_u3r(int(rng.choice([8, 10, 12])), rng)
        cfg = random_config(g.n, rng)
        gamma, beta = rng.uniform(-np.pi, 2 * np.pi, 2)
        e, z = expectations(g, cfg, gamma, beta)
        e0, z0 = statevector_expectation(g, cfg, gamma, beta)
        de, dz = max(de, abs(e - e0)), max(dz, float(np.max(np.abs(z - z0))))
    out = [_check("engine_vs_statevector", de <= 1e-9 and dz <= 1e-9, energy_error=de, z_error=dz, draws=draws)]

    le = lz = 0.0
    for _ in range(5):
        g = generate_u3r(24, rng)
        cfg = random_config(g.n, rng)
        gamma, beta = rng.uniform(0, 2 * np.pi, 2)
        e, z = expectations(g, cfg, gamma, beta)
        e0, z0 = local_subgraph_expectation(g, cfg, gamma, beta)
        le, lz = max(le, abs(e - e0)), max(lz, float(np.max(np.abs(z - z0))))
    out.append(_check("engine_vs_local_subgraphs", le <= 1e-9 and lz <= 1e-9, energy_error=le, z_error=lz))

    bad = []
    for g in (complete_graph(4), complete_bipartite_33(), prism_graph(), petersen_graph(), generate_u3r(12, rng)):
        value, witness = maxcut_bruteforce(g)
        if value != _enumerate_maxcut(g) or cut_value(g, witness) != value:
            bad.append(g.n)
    out.append(_check("bruteforce_vs_enumeration", not bad, mismatched=bad))
    return out


def closedform_suite(seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    for mode in MODES:
        worst = 0.0
        for _ in range(4):
            g = generate_u3r(int(rng.choice([4, 8, 12, 16, 20])), rng)
            bits = rng.integers(0, 2, g.n)
            c = cut_value(g, bits)
            for db in np.linspace(-np.pi / 2, np.pi / 2, 25):
                cfg, gamma, beta = appendix_c_point(bits, db, mode, gamma=rng.uniform(0, 2 * np.pi))
                worst = max(worst, abs(expected_cost(g, cfg, gamma, beta) - appendix_c_energy(g, c, db, mode)))
        out.append(_check(f"closed_form_{mode}", worst <= 1e-9, max_error=worst))

    ab = ws = 0.0
    for _ in range(10):
        g = generate_u3r(int(rng.choice([10, 30, 60, 100])), rng)
        bits = rng.integers(0, 2, g.n)
        c = cut_value(g, bits)
        ab = max(ab, abs(expected_cost(g, encode_ws_ab(bits, recovery_fields(bits)), np.pi, np.pi / 2) + c))
        ws = max(ws, abs(expected_cost(g, encode_ws_qaoa(bits.astype(float), 0.25), 0.0, np.pi / 2) + c))
    out.append(_check("ws_ab_recovery", ab <= 1e-12, max_error=ab))
    out.append(_check("ws_qaoa_recovery", ws <= 1e-12, max_error=ws))
    return out


def guarantees_suite(seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    ratios, dominance, ordering = [], [], []
    for _ in range(10):
        g = generate_u3r(int(rng.choice([10, 12, 14, 16])), rng)
        exact = maxcut_bruteforce(g)[0]
        res = gw_solve(g, 20, seed=rng)
        ratios.append(res.cut / exact)
        dominance.append(res.sdp_objective - exact)
        ordering.append(solve_bm_mc2(g, 3, seed=int(rng.integers(2**31))).value - res.sdp_objective)
    out = [
        _check("gw_mean_ratio", np.mean(ratios) >= 0.878, mean_ratio=float(np.mean(ratios))),
        _check("sdp_dominates_exact", min(dominance) >= -1e-5, min_margin=float(min(dominance))),
        _check("bm_below_sdp", max(ordering) <= 1e-5, max_excess=float(max(ordering))),
    ]
    t = np.linspace(0.0, np.pi, 10_001)
    out.append(_check("warmest_margin", float(warmest_margin(t).min()) >= 0.0,
                      min_margin=float(warmest_margin(t).min())))
    cubic_ok = all(check_pi_gamma_identity(generate_u3r(int(n), rng)) for n in (4, 6, 8, 10, 12))
    out.append(_check("pi_gamma_identity", cubic_ok and not check_pi_gamma_identity(cycle_graph(4)),
                      cubic=cubic_ok))
    regress = []
    for _ in range(3):
        g = generate_u3r(30, rng)
        warm = gw_solve(g, 1, seed=rng)
        rep = train_ws_ab(g, warm.best)
        regress.append(rep.best_cut - warm.cut)
    out.append(_check("wsab_not_below_warm", min(regress) >= 0, gains=regress))
    return out


SUITES = {"oracle": oracle_suite, "closedform": closedform_suite, "guarantees": guarantees_suite}
