"""Experiment plumbing shared by the CLI and the scripts.

Seeds are split by key rather than by draw order: every random stream is
``SeedSequence(master, spawn_key=(n, graph_index, stream_id))``, so a graph's
results do not depend on which other graphs or algorithms ran alongside it.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .bm import AngleSolution, project_angles, solve_bm_mc2, uniform_rotation, vertex_at_top
from .graphs import Graph, cut_value, generate_u3r
from .gw import GWResult, SdpState, best_of_prefixes, gram_vectors, gw_solve, projections_to_match, solve_sdp
from .oracle import BRUTEFORCE_CAP, maxcut_bruteforce
from .train import WS_AB_INIT, WS_QAOA_INIT, AngleOptions, TrainOptions, train_angles, train_ws_ab
from .variants import encode_standard, encode_warmest, encode_ws_qaoa

__all__ = [
    "ALGOS",
    "STREAMS",
    "GENERATOR",
    "RunOptions",
    "Instance",
    "stream",
    "make_graph",
    "run_algo",
    "compare_rows",
    "sweep_rows",
    "COMPARE_HEADER",
    "SWEEP_HEADER",
    "parallel_map",
]

ALGOS = ("exact", "gw", "bm", "qaoa-std", "qaoa-ws", "qaoa-warmest", "qaoa-wsab")
STREAMS = {"graph": 0, "gw": 1, "bm": 2, "inits": 3, "gauge": 4, "bm-round": 5}
GENERATOR = "pairing-model/1"


@dataclass(frozen=True)
class RunOptions:
    projections: int = 1
    restarts: int = 10
    inits: int = 10
    epsilon: float = 0.25
    rotation: str = "vertex-at-top"
    tol: float = 1e-7
    train: TrainOptions = field(default_factory=TrainOptions)
    angles: AngleOptions = field(default_factory=AngleOptions)

    def __post_init__(self):
        if self.projections < 1 or self.restarts < 1 or self.inits < 1:
            raise ValueError("projections, restarts and inits must be positive")
        if self.rotation not in ("vertex-at-top", "uniform"):
            raise ValueError(f"unknown rotation {self.rotation!r}")


def stream(seed: int, n: int, index: int, name: str) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(n, index, STREAMS[name]))


def make_graph(seed: int, n: int, index: int) -> Graph:
    return generate_u3r(n, np.random.default_rng(stream(seed, n, index, "graph")))


class Instance:
    """One graph with its seed streams and lazily shared classical solves."""

    def __init__(self, g: Graph, seed: int, index: int = 0, opts: RunOptions | None = None):
        self.g = g
        self.seed = seed
        self.index = index
        self.opts = opts or RunOptions()

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng(stream(self.seed, self.g.n, self.index, name))

    @cached_property
    def sdp(self) -> SdpState:
        return solve_sdp(self.g, tol=self.opts.tol)

    @cached_property
    def gw(self) -> GWResult:
        return gw_solve(self.g, self.opts.projections, seed=self.rng("gw"), sdp=self.sdp)

    @cached_property
    def gw_single(self) -> GWResult:
        """The one-projection warm start (the first draw of the gw stream)."""
        if self.opts.projections == 1:
            return self.gw
        return gw_solve(self.g, 1, seed=self.rng("gw"), sdp=self.sdp)

    @cached_property
    def bm(self) -> AngleSolution:
        return solve_bm_mc2(self.g, self.opts.restarts, seed=stream(self.seed, self.g.n, self.index, "bm"))

    @cached_property
    def exact(self) -> int | None:
        if self.g.n > BRUTEFORCE_CAP:
            return None
        return maxcut_bruteforce(self.g)[0]

    def random_inits(self, count: int) -> list[tuple[float, float]]:
        pts = self.rng("inits").uniform(0.0, 2.0 * np.pi, size=(count, 2))
        return [tuple(map(float, p)) for p in pts]


def _warmest_angles(inst: Instance) -> AngleSolution:
    sol = inst.bm
    rng = inst.rng("gauge")
    if inst.opts.rotation == "uniform":
        return uniform_rotation(sol, rng)
    return vertex_at_top(sol, int(rng.integers(inst.g.n)))


def run_algo(inst: Instance, algo: str) -> dict:
    """Result record: algo, cut, energy, ratio (when exact is known), wall time, provenance."""
    if algo not in ALGOS:
        raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGOS}")
    g, o = inst.g, inst.opts
    t0 = time.perf_counter()
    energy = None
    params: dict = {}
    if algo == "exact":
        cut = maxcut_bruteforce(g)[0]
        energy = -float(cut)
    elif algo == "gw":
        res = inst.gw
        cut = res.cut
        params = {"projections": o.projections, "sdp_objective": res.sdp_objective,
                  "sdp_iterations": res.sdp.iterations}
    elif algo == "bm":
        sol = inst.bm
        cut = cut_value(g, project_angles(sol, inst.rng("bm-round")))
        params = {"restarts": o.restarts, "bm_value": sol.value}
    elif algo == "qaoa-std":
        gamma, beta, energy = train_angles(g, encode_standard(g.n), [WS_AB_INIT], o.angles)
        cut = -energy
        params = {"gamma1": gamma, "beta1": beta}
    elif algo == "qaoa-ws":
        warm = inst.gw_single
        cfg = encode_ws_qaoa(warm.best.astype(float), o.epsilon)
        inits = [WS_QAOA_INIT] + inst.random_inits(o.inits - 1)
        gamma, beta, energy = train_angles(g, cfg, inits, o.angles)
        cut = -energy
        params = {"gamma1": gamma, "beta1": beta, "epsilon": o.epsilon, "warm_cut": warm.cut}
    elif algo == "qaoa-warmest":
        sol = _warmest_angles(inst)
        gamma, beta, energy = train_angles(g, encode_warmest(sol.theta), inst.random_inits(o.inits), o.angles)
        cut = -energy
        params = {"gamma1": gamma, "beta1": beta, "rotation": o.rotation, "bm_value": sol.value}
    else:
        warm = inst.gw_single
        rep = train_ws_ab(g, warm.best, o.train)
        cut = rep.best_cut
        energy = rep.final_energy
        params = {"gamma1": rep.gamma1, "beta1": rep.beta1, "warm_cut": rep.warm_cut,
                  "bias_cut": rep.bias_cut, "iterations": rep.iterations, "converged": rep.converged,
                  "schedule": "angles and bias fields updated every iteration"}
    wall = time.perf_counter() - t0
    exact = inst.exact
    return {
        "algo": algo,
        "n": g.n,
        "edges": g.m,
        "graph_index": inst.index,
        "cut": float(cut),
        "energy": energy,
        "ratio": None if exact is None else float(cut) / exact,
        "exact": exact,
        "wall_time": wall,
        "seed": inst.seed,
        "params": params,
        "version": __version__,
    }


def parallel_map(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    """Order-preserving map; processes when ``jobs > 1``."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# --- compare ---------------------------------------------------------------

COMPARE_HEADER = ("n", "algo", "graphs", "mean_cut", "se_cut", "mean_cut_per_edge",
                  "se_cut_per_edge", "mean_ratio", "se_ratio")


def _se(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1) / np.sqrt(x.size)) if x.size > 1 else 0.0


def _compare_one(task) -> list[dict]:
    seed, n, index, algos, opts = task
    inst = Instance(make_graph(seed, n, index), seed, index, opts)
    return [run_algo(inst, a) for a in algos]


def compare_rows(ns: Sequence[int], graphs: int, algos: Sequence[str], seed: int,
                 opts: RunOptions | None = None, jobs: int = 1) -> tuple[list[dict], list[dict]]:
    """Per-(n, algo) summary rows and the raw per-instance records."""
    if not algos:
        raise ValueError("need at least one algorithm")
    for a in algos:
        if a not in ALGOS:
            raise ValueError(f"unknown algorithm {a!r}")
    if graphs < 1:
        raise ValueError("graphs must be positive")
    opts = opts or RunOptions()
    tasks = [(seed, n, i, tuple(algos), opts) for n in ns for i in range(graphs)]
    records = [r for batch in parallel_map(_compare_one, tasks, jobs) for r in batch]
    rows = []
    for n in ns:
        for a in algos:
            rs = [r for r in records if r["n"] == n and r["algo"] == a]
            cut = np.array([r["cut"] for r in rs])
            per_edge = cut / rs[0]["edges"]
            ratios = [r["ratio"] for r in rs if r["ratio"] is not None]
            ratio = np.array(ratios) if len(ratios) == len(rs) else None
            rows.append({
                "n": n, "algo": a, "graphs": len(rs),
                "mean_cut": float(cut.mean()), "se_cut": _se(cut),
                "mean_cut_per_edge": float(per_edge.mean()), "se_cut_per_edge": _se(per_edge),
                "mean_ratio": "" if ratio is None else float(ratio.mean()),
                "se_ratio": "" if ratio is None else _se(ratio),
            })
    return rows, records


# --- projection sweep --------------------------------------------------------

SWEEP_HEADER = ("kind", "n", "R", "graphs", "gw_cut_per_edge", "wsab_cut_per_edge",
                "match_median", "match_mean", "match_min", "match_max", "match_capped")


def _sweep_one(task) -> dict:
    seed, n, index, rs, cap, opts = task
    inst = Instance(make_graph(seed, n, index), seed, index, opts)
    g = inst.g
    v = gram_vectors(inst.sdp.Y)
    prefixes = best_of_prefixes(g, v, rs, seed=inst.rng("gw"))
    wsab_from: dict[bytes, int] = {}
    per_r = {}
    for R in rs:
        bits, cut = prefixes[R]
        key = bits.tobytes()
        if key not in wsab_from:
            wsab_from[key] = train_ws_ab(g, bits, opts.train).best_cut
        per_r[R] = (cut, wsab_from[key])
    # the single-projection warm start is the first draw of the same gw stream
    key = inst.gw_single.best.tobytes()
    if key not in wsab_from:
        wsab_from[key] = train_ws_ab(g, inst.gw_single.best, opts.train).best_cut
    target = wsab_from[key]
    match = projections_to_match(g, target, cap, seed=inst.rng("gw"), vectors=v)
    return {"n": n, "index": index, "edges": g.m, "per_r": per_r, "target": target, "match": match}


def sweep_rows(ns: Sequence[int], rs: Sequence[int], graphs: int, seed: int, cap: int = 10_000,
               opts: RunOptions | None = None, jobs: int = 1) -> tuple[list[dict], list[dict]]:
    """``best_of`` rows per (n, R) and one ``match`` row per n."""
    if not rs or min(rs) < 1:
        raise ValueError("R values must be positive")
    if graphs < 1 or cap < 1:
        raise ValueError("graphs and cap must be positive")
    opts = opts or RunOptions()
    rs = tuple(sorted(set(int(r) for r in rs)))
    tasks = [(seed, n, i, rs, cap, opts) for n in ns for i in range(graphs)]
    records = parallel_map(_sweep_one, tasks, jobs)
    blank = dict.fromkeys(SWEEP_HEADER, "")
    rows = []
    for n in ns:
        recs = [r for r in records if r["n"] == n]
        m = recs[0]["edges"]
        for R in rs:
            rows.append({**blank, "kind": "best_of", "n": n, "R": R, "graphs": len(recs),
                         "gw_cut_per_edge": float(np.mean([r["per_r"][R][0] for r in recs])) / m,
                         "wsab_cut_per_edge": float(np.mean([r["per_r"][R][1] for r in recs])) / m})
        match = np.array([r["match"] for r in recs])
        rows.append({**blank, "kind": "match", "n": n, "graphs": len(recs),
                     "match_median": float(np.median(match)), "match_mean": float(match.mean()),
                     "match_min": int(match.min()), "match_max": int(match.max()),
                     "match_capped": int(np.sum(match >= cap))})
    return rows, records
