"""Simple connected undirected graphs and the exact combinatorial oracles.

Vertices are dense integers ``0..n-1``.  Edges are stored as ``(min, max)``
pairs sorted lexicographically, so the position of an edge in
:attr:`Graph.edges` is a stable edge index that the subdivision transforms
use to address the vertices they insert.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _config
from .errors import (
    Disconnected,
    DuplicateEdge,
    GraphError,
    InvalidParams,
    SelfLoop,
    SizeCapExceeded,
    VertexOutOfRange,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """A validated simple connected graph.

    Construct through :func:`build_graph` or the generators; direct
    construction runs the same validation but expects canonical edges.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise GraphError(f"a graph needs at least 2 vertices, got n={self.n}")
        if len(self.edges) < 1:
            raise GraphError("a graph needs at least one edge")
        neighbours: list[list[int]] = [[] for _ in range(self.n)]
        seen: set[Edge] = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexOutOfRange(f"edge ({u}, {v}) references a vertex outside [0, {self.n})")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if u > v:
                raise GraphError(f"edge ({u}, {v}) is not in canonical (min, max) order")
            if (u, v) in seen:
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            neighbours[u].append(v)
            neighbours[v].append(u)
        if list(self.edges) != sorted(self.edges):
            raise GraphError("edges must be sorted lexicographically")
        adjacency = tuple(tuple(sorted(nb)) for nb in neighbours)
        object.__setattr__(self, "adjacency", adjacency)
        if _component_size(adjacency, 0) != self.n:
            raise Disconnected("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return np.array([len(nb) for nb in self.adjacency], dtype=np.int64)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def laplacian(self) -> np.ndarray:
        """Combinatorial Laplacian ``D - A``."""
        a = self.adjacency_matrix()
        return np.diag(a.sum(axis=1)) - a

    def edge_index(self, u: int, v: int) -> int:
        key = (min(u, v), max(u, v))
        try:
            return self.edges.index(key)
        except ValueError:
            raise GraphError(f"({u}, {v}) is not an edge") from None


def _component_size(adjacency: Sequence[Sequence[int]], start: int) -> int:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` over vertices ``[0, n)`` and return a :class:`Graph`.

    Raises
    ------
    SelfLoop, DuplicateEdge, Disconnected, VertexOutOfRange
    """
    n = int(n)
    canonical = []
    for pair in edges:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) references a vertex outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        canonical.append((min(u, v), max(u, v)))
    canonical.sort()
    for a, b in zip(canonical, canonical[1:]):
        if a == b:
            raise DuplicateEdge(f"duplicate edge {a}")
    return Graph(n, tuple(canonical))


# -- generators ---------------------------------------------------------------

def path_graph(n: int) -> Graph:
    if n < 2:
        raise InvalidParams("path needs n >= 2")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParams("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise InvalidParams("complete graph needs n >= 2")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise InvalidParams("complete bipartite graph needs both parts non-empty")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


RANDOM_MAX_DRAWS = 100


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi draw, redrawn until connected (at most 100 draws)."""
    if n < 2:
        raise InvalidParams("random graph needs n >= 2")
    if not 0.0 < p <= 1.0:
        raise InvalidParams(f"edge probability must be in (0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    for _ in range(RANDOM_MAX_DRAWS):
        keep = rng.random(iu.size) < p
        edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        if not edges:
            continue
        try:
            return build_graph(n, edges)
        except Disconnected:
            continue
    raise InvalidParams(f"no connected G({n}, {p}) within {RANDOM_MAX_DRAWS} draws (seed={seed})")


def generate(kind: str, *params) -> Graph:
    """Dispatch to a generator by name.

    ``kind`` is one of ``path``, ``cycle``, ``complete``,
    ``complete_bipartite`` (two sizes) or ``random_connected``
    (``n, p, seed``).
    """
    builders = {
        "path": (path_graph, 1),
        "cycle": (cycle_graph, 1),
        "complete": (complete_graph, 1),
        "complete_bipartite": (complete_bipartite_graph, 2),
        "random_connected": (random_connected_graph, 3),
    }
    if kind not in builders:
        raise InvalidParams(f"unknown graph kind {kind!r}; expected one of {sorted(builders)}")
    fn, arity = builders[kind]
    if len(params) != arity:
        raise InvalidParams(f"{kind} takes {arity} parameter(s), got {len(params)}")
    if kind == "random_connected":
        n, p, seed = params
        return fn(int(n), float(p), int(seed))
    return fn(*(int(x) for x in params))


# -- structure ----------------------------------------------------------------

def is_bipartite(g: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """BFS 2-colouring; returns ``(True, colours)`` or ``(False, None)``."""
    colour = [-1] * g.n
    colour[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if colour[v] < 0:
                colour[v] = 1 - colour[u]
                queue.append(v)
            elif colour[v] == colour[u]:
                return False, None
    return True, tuple(colour)


def incidence_matrix(g: Graph) -> np.ndarray:
    """Unsigned vertex-edge incidence matrix, shape ``(n, m)``."""
    b = np.zeros((g.n, g.m))
    for e, (u, v) in enumerate(g.edges):
        b[u, e] = b[v, e] = 1.0
    return b


RANK_PIVOT_RTOL = 1e-9


def numeric_rank(matrix: np.ndarray, rtol: float = RANK_PIVOT_RTOL) -> int:
    """Rank by Gaussian elimination with partial pivoting.

    A pivot counts when it exceeds ``rtol`` times the largest absolute
    entry of the input.
    """
    a = np.array(matrix, dtype=float, copy=True)
    rows, cols = a.shape
    scale = np.abs(a).max() if a.size else 0.0
    if scale == 0.0:
        return 0
    threshold = rtol * scale
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        p = rank + int(np.argmax(np.abs(a[rank:, c])))
        if abs(a[p, c]) <= threshold:
            continue
        a[[rank, p]] = a[[p, rank]]
        a[rank + 1:] -= np.outer(a[rank + 1:, c] / a[rank, c], a[rank])
        rank += 1
    return rank


def incidence_rank(g: Graph) -> int:
    """Rank of the unsigned incidence matrix: ``n - 1`` if bipartite else ``n``."""
    bipartite, _ = is_bipartite(g)
    return g.n - 1 if bipartite else g.n


def incidence_rank_numeric(g: Graph) -> int:
    return numeric_rank(incidence_matrix(g))


def spanning_tree_count_exact(g: Graph, drop: int = 0, cap: int | None = None) -> int:
    """Number of spanning trees by the Matrix-Tree theorem.

    The ``drop``-th row and column of the combinatorial Laplacian are
    removed and the remaining determinant is evaluated with fraction-free
    (Bareiss) elimination over Python integers, so the result is exact.
    """
    cap = _config.size_cap(_config.MATRIX_TREE_VERTEX_CAP) if cap is None else cap
    if g.n > cap:
        raise SizeCapExceeded(f"Matrix-Tree elimination capped at n={cap}, got n={g.n}")
    if not 0 <= drop < g.n:
        raise VertexOutOfRange(f"cofactor index {drop} outside [0, {g.n})")
    keep = [v for v in range(g.n) if v != drop]
    pos = {v: i for i, v in enumerate(keep)}
    size = len(keep)
    a = [[0] * size for _ in range(size)]
    for v in keep:
        a[pos[v]][pos[v]] = len(g.adjacency[v])
    for u, v in g.edges:
        if u in pos and v in pos:
            a[pos[u]][pos[v]] = -1
            a[pos[v]][pos[u]] = -1
    return _bareiss_det(a)


def _bareiss_det(a: list[list[int]]) -> int:
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, size):
            row_i = a[i]
            aik = row_i[k]
            if aik == 0:
                for j in range(k + 1, size):
                    row_i[j] = row_i[j] * pivot // prev
            else:
                for j in range(k + 1, size):
                    row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[-1][-1]


# -- edge-list text format ----------------------------------------------------

def format_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty edge list")
    header = rows[0]
    if len(header) != 2:
        raise GraphError(f"header must be 'n m', got {' '.join(header)!r}")
    n, m = int(header[0]), int(header[1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges but {len(body)} were given")
    edges = []
    for row in body:
        if len(row) != 2:
            raise GraphError(f"edge line must be 'u v', got {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return build_graph(n, edges)


def read_edgelist(path: str | Path) -> Graph:
    return parse_edgelist(Path(path).read_text())


def write_edgelist(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edgelist(g))
