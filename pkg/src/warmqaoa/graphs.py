"""Graph representation, random cubic generation, cut evaluation and edge neighborhoods."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "Graph",
    "EdgeNeighborhood",
    "generate_u3r",
    "cut_value",
    "classify_edge",
    "laplacian",
    "exact_ratio",
    "complete_graph",
    "complete_bipartite_33",
    "prism_graph",
    "cube_graph",
    "petersen_graph",
    "cycle_graph",
    "read_edgelist",
    "write_edgelist",
    "InvariantViolation",
]


class InvariantViolation(RuntimeError):
    """A solver or oracle produced a result that is mathematically impossible."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored canonically as ``(u, v)`` with ``u < v`` and sorted.
    The constructor only enforces simplicity; 3-regularity is checked by the
    callers that need it (see :meth:`require_cubic`).
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            canon.append((min(u, v), max(u, v)))
        canon.sort()
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edge")
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=int)

    def is_regular(self, d: int | None = None) -> bool:
        deg = self.degrees
        if d is None:
            d = int(deg[0])
        return bool(np.all(deg == d))

    def is_cubic(self) -> bool:
        return self.is_regular(3)

    def require_cubic(self) -> None:
        if not self.is_cubic():
            raise ValueError("graph is not 3-regular")

    def edge_array(self) -> np.ndarray:
        """``(m, 2)`` integer array of edges."""
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class EdgeNeighborhood:
    """Local structure around edge ``(j, k)`` in a cubic graph.

    ``j1, j2`` are the other neighbors of ``j`` and ``k1, k2`` those of
    ``k``.  Class ``"B"`` has its shared vertex at ``j1 == k1``; class
    ``"C"`` has ``j1 == k1`` and ``j2 == k2``.
    """

    j: int
    k: int
    j1: int
    j2: int
    k1: int
    k2: int
    cls: str


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def generate_u3r(n: int, seed=None, max_tries: int = 100_000) -> Graph:
    """Uniform random simple 3-regular graph via the pairing model.

    Every stub pairing containing a self-loop or a repeated edge is thrown
    away whole and redrawn, which keeps the distribution uniform over simple
    cubic graphs.
    """
    if isinstance(n, bool) or int(n) != n or n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n}")
    n = int(n)
    rng = _rng(seed)
    stubs = np.repeat(np.arange(n), 3)
    for _ in range(max_tries):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        u = pairs.min(axis=1)
        v = pairs.max(axis=1)
        if np.any(u == v):
            continue
        keys = u * n + v
        if np.unique(keys).size != keys.size:
            continue
        return Graph(n, tuple(zip(u.tolist(), v.tolist())))
    raise RuntimeError(f"no simple pairing found in {max_tries} attempts")


def _as_bits(g: Graph, bits) -> np.ndarray:
    a = np.asarray(bits, dtype=np.int64).ravel()
    if a.size != g.n:
        raise ValueError(f"assignment has length {a.size}, graph has {g.n} vertices")
    if np.any((a != 0) & (a != 1)):
        raise ValueError("assignment entries must be 0 or 1")
    return a


def cut_value(g: Graph, bits) -> int:
    """Number of edges whose endpoints carry different bits."""
    a = _as_bits(g, bits)
    if g.m == 0:
        return 0
    e = g.edge_array()
    return int(np.count_nonzero(a[e[:, 0]] != a[e[:, 1]]))


def classify_edge(g: Graph, edge) -> EdgeNeighborhood:
    j, k = int(edge[0]), int(edge[1])
    if not (0 <= j < g.n and 0 <= k < g.n) or not g.has_edge(j, k):
        raise ValueError(f"({j}, {k}) is not an edge")
    if len(g.adjacency[j]) != 3 or len(g.adjacency[k]) != 3:
        raise ValueError("edge endpoints must have degree 3")
    jn = [v for v in g.adjacency[j] if v != k]
    kn = [v for v in g.adjacency[k] if v != j]
    shared = sorted(set(jn) & set(kn))
    if not shared:
        return EdgeNeighborhood(j, k, jn[0], jn[1], kn[0], kn[1], "A")
    if len(shared) == 1:
        s = shared[0]
        jo = next(v for v in jn if v != s)
        ko = next(v for v in kn if v != s)
        return EdgeNeighborhood(j, k, s, jo, s, ko, "B")
    return EdgeNeighborhood(j, k, shared[0], shared[1], shared[0], shared[1], "C")


def laplacian(g: Graph) -> np.ndarray:
    A = np.zeros((g.n, g.n))
    if g.m:
        e = g.edge_array()
        A[e[:, 0], e[:, 1]] = 1.0
        A[e[:, 1], e[:, 0]] = 1.0
    return np.diag(A.sum(axis=1)) - A


def exact_ratio(cut: int, exact: int) -> float:
    if exact <= 0:
        raise ValueError("exact cut value must be positive")
    if cut < 0:
        raise ValueError("cut value must be non-negative")
    if cut > exact:
        raise InvariantViolation(f"cut {cut} exceeds the optimum {exact}")
    return cut / exact


# --- named fixtures --------------------------------------------------------

def complete_graph(n: int = 4) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite_33() -> Graph:
    return Graph(6, tuple((u, v) for u in range(3) for v in range(3, 6)))


def prism_graph() -> Graph:
    """Two triangles joined by a perfect matching."""
    return Graph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)))


def cube_graph() -> Graph:
    return Graph(8, tuple((u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


# --- edge-list I/O ---------------------------------------------------------

def read_edgelist(path) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format; ``#`` starts a comment."""
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ValueError(f"{path}: empty graph file")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (IndexError, ValueError) as exc:
        raise ValueError(f"{path}: malformed edge list") from exc
    if len(edges) != m:
        raise ValueError(f"{path}: header announces {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def write_edgelist(g: Graph, path, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    Path(path).write_text("\n".join(lines) + "\n")
