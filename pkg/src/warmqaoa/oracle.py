"""Ground-truth engines: exhaustive MaxCut, dense statevector simulation, local brute force."""
from __future__ import annotations

import numpy as np
from numba import njit

from .graphs import Graph
from .variants import VariantConfig

__all__ = [
    "CapacityError",
    "maxcut_bruteforce",
    "statevector_expectation",
    "final_state",
    "check_pi_gamma_identity",
    "local_subgraph_expectation",
    "BRUTEFORCE_CAP",
    "STATEVECTOR_CAP",
]

BRUTEFORCE_CAP = 26
STATEVECTOR_CAP = 16


class CapacityError(ValueError):
    pass


@njit(cache=True)
def _gray_maxcut(n, nbr, deg):
    # vertex 0 stays at bit 0; enumerate the other n-1 bits in Gray order
    bits = np.zeros(n, np.int8)
    cut = 0
    best = 0
    best_step = 0
    total = 1 << (n - 1)
    for step in range(1, total):
        v = 1
        s = step
        while (s & 1) == 0:
            s >>= 1
            v += 1
        # flipping v changes each incident edge's cut status
        same = 0
        for t in range(deg[v]):
            if bits[nbr[v, t]] == bits[v]:
                same += 1
        cut += 2 * same - deg[v]
        bits[v] ^= 1
        if cut > best:
            best = cut
            best_step = step
    return best, best_step


def maxcut_bruteforce(g: Graph, cap: int = BRUTEFORCE_CAP) -> tuple[int, np.ndarray]:
    """Exact maximum cut by Gray-code enumeration with O(deg) updates per step."""
    if g.n > cap:
        raise CapacityError(f"brute force limited to n <= {cap}, got {g.n}")
    if g.n == 1 or g.m == 0:
        return 0, np.zeros(g.n, np.int8)
    deg = np.array([len(a) for a in g.adjacency], dtype=np.int64)
    nbr = np.zeros((g.n, max(1, int(deg.max()))), dtype=np.int64)
    for v, a in enumerate(g.adjacency):
        nbr[v, : len(a)] = a
    best, step = _gray_maxcut(g.n, nbr, deg)
    gray = step ^ (step >> 1)
    witness = np.zeros(g.n, np.int8)
    for v in range(1, g.n):
        witness[v] = (gray >> (v - 1)) & 1
    return int(best), witness


# --- dense simulation ------------------------------------------------------

def _ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rx_beta(beta: float) -> np.ndarray:
    """exp(-i beta X)."""
    c, s = np.cos(beta), np.sin(beta)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _apply_1q(psi: np.ndarray, U: np.ndarray, q: int) -> np.ndarray:
    psi = np.tensordot(U, psi, axes=([1], [q]))
    return np.moveaxis(psi, 0, q)


def _zvals(n: int) -> np.ndarray:
    """(n, 2**n) table of Z eigenvalues with qubit j as the j-th most significant bit."""
    idx = np.arange(1 << n)
    shifts = n - 1 - np.arange(n)
    return 1.0 - 2.0 * ((idx[None, :] >> shifts[:, None]) & 1)


def _cost_diag(g: Graph, z: np.ndarray) -> np.ndarray:
    diag = np.zeros(z.shape[1])
    for u, v in g.edges:
        diag += 0.5 * (z[u] * z[v] - 1.0)
    return diag


def final_state(g: Graph, cfg: VariantConfig, gamma: float, beta: float) -> np.ndarray:
    """Level-1 output state as a flat vector (qubit 0 most significant)."""
    n = g.n
    if n > STATEVECTOR_CAP:
        raise CapacityError(f"statevector limited to n <= {STATEVECTOR_CAP}, got {n}")
    if cfg.n != n:
        raise ValueError("config length does not match graph")
    psi = np.zeros((2,) * n, dtype=complex)
    psi[tuple(int(b) for b in cfg.warm_bits)] = 1.0
    for q in range(n):
        psi = _apply_1q(psi, _ry(cfg.delta[q]), q)
    z = _zvals(n)
    psi = (np.exp(-1j * gamma * _cost_diag(g, z)) * psi.reshape(-1)).reshape((2,) * n)
    mix = _rx_beta(beta)
    for q in range(n):
        psi = _apply_1q(psi, _ry(cfg.alpha[q]) @ mix @ _ry(-cfg.alpha[q]), q)
    return psi.reshape(-1)


def statevector_expectation(g: Graph, cfg: VariantConfig, gamma: float, beta: float):
    """Return (<H_C>, [<Z_j>]) from the full 2**n state."""
    psi = final_state(g, cfg, gamma, beta)
    prob = np.abs(psi) ** 2
    z = _zvals(g.n)
    energy = float(prob @ _cost_diag(g, z))
    return energy, z @ prob


def check_pi_gamma_identity(g: Graph, seed=0, atol: float = 1e-10, cap: int = 14) -> bool:
    """Does exp(-i pi H_C) act as prod_j Z_j (up to a global phase)?

    Holds exactly on odd-degree regular graphs; fails whenever some vertex
    has even degree.
    """
    if g.n > cap:
        raise CapacityError(f"identity check limited to n <= {cap}")
    rng = np.random.default_rng(seed)
    dim = 1 << g.n
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    psi /= np.linalg.norm(psi)
    z = _zvals(g.n)
    lhs = np.exp(-1j * np.pi * _cost_diag(g, z)) * psi
    rhs = np.prod(z, axis=0) * psi
    i = int(np.argmax(np.abs(rhs)))
    phase = lhs[i] / rhs[i]
    phase /= abs(phase)
    return bool(np.max(np.abs(lhs - phase * rhs)) <= atol)


def _local_graph(g: Graph, centre: list[int]) -> tuple[Graph, list[int]]:
    """Edges touching ``centre`` relabelled onto their vertex set (centre first)."""
    verts = list(centre)
    for c in centre:
        for v in g.adjacency[c]:
            if v not in verts:
                verts.append(v)
    index = {v: i for i, v in enumerate(verts)}
    edges = {(min(u, v), max(u, v)) for c in centre for u, v in ((c, w) for w in g.adjacency[c])}
    return Graph(len(verts), tuple((index[u], index[v]) for u, v in sorted(edges))), verts


def local_subgraph_expectation(g: Graph, cfg: VariantConfig, gamma: float, beta: float):
    """Energy and magnetizations from dense simulation of each edge's light cone.

    Only the cost terms touching ``j`` or ``k`` survive the conjugation of
    ``Z_j Z_k``, so every edge needs at most six qubits and every vertex four.
    """
    if not g.is_cubic():
        raise ValueError("local brute force requires a 3-regular graph")
    energy = 0.0
    for j, k in g.edges:
        sub, verts = _local_graph(g, [j, k])
        psi = final_state(sub, cfg.subset(verts), gamma, beta)
        z = _zvals(sub.n)
        energy += 0.5 * (float(np.abs(psi) ** 2 @ (z[0] * z[1])) - 1.0)
    zs = np.empty(g.n)
    for j in range(g.n):
        sub, verts = _local_graph(g, [j])
        psi = final_state(sub, cfg.subset(verts), gamma, beta)
        zs[j] = float(np.abs(psi) ** 2 @ _zvals(sub.n)[0])
    return energy, zs
