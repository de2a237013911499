"""k-parallel subdivision operators.

``sk`` replaces every edge ``{u, v}`` by ``k`` internally disjoint paths of
length 2, ``s2k`` by ``k`` internally disjoint paths of length 3.  Original
vertices keep their indices; inserted vertices are laid out after them in
a fixed order so that a vertex index can be mapped back to its parent edge
and branch without a lookup table:

* ``sk``:  vertex for (edge ``e``, branch ``l``) is ``n + l*m + e``
* ``s2k``: vertex for (edge ``e``, branch ``l``, position ``p``) is
  ``n + 2*(l*m + e) + (p - 1)``; position 1 is adjacent to the smaller
  endpoint of ``e``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

from . import _config
from .errors import InvalidK, InvalidParams, SizeCapExceeded
from .graph import Graph, build_graph

Variant = Literal["sk", "s2k"]
VARIANTS: tuple[str, ...] = ("sk", "s2k")


@dataclass(frozen=True)
class Original:
    vertex: int
    kind = "original"

    def to_dict(self, index: int) -> dict:
        return {"vertex": index, "kind": self.kind, "parent": self.vertex}


@dataclass(frozen=True)
class SkMid:
    edge: int
    branch: int
    kind = "sk_mid"

    def to_dict(self, index: int) -> dict:
        return {"vertex": index, "kind": self.kind, "edge": self.edge, "branch": self.branch}


@dataclass(frozen=True)
class S2kNode:
    edge: int
    branch: int
    pos: int
    kind = "s2k_node"

    def to_dict(self, index: int) -> dict:
        return {"vertex": index, "kind": self.kind, "edge": self.edge,
                "branch": self.branch, "pos": self.pos}


VertexLabel = Union[Original, SkMid, S2kNode]


@dataclass(frozen=True)
class TransformedGraph:
    graph: Graph
    labels: tuple[VertexLabel, ...]
    k: int
    variant: str
    parent: Graph

    @property
    def parent_n(self) -> int:
        return self.parent.n

    @property
    def parent_m(self) -> int:
        return self.parent.m

    def sk_vertex(self, edge: int, branch: int) -> int:
        if self.variant != "sk":
            raise InvalidParams("sk_vertex addresses S_k graphs only")
        _check_slot(edge, branch, self.parent.m, self.k)
        return self.parent.n + branch * self.parent.m + edge

    def s2k_vertex(self, edge: int, branch: int, pos: int) -> int:
        if self.variant != "s2k":
            raise InvalidParams("s2k_vertex addresses S_2k graphs only")
        _check_slot(edge, branch, self.parent.m, self.k)
        if pos not in (1, 2):
            raise InvalidParams(f"position must be 1 or 2, got {pos}")
        return self.parent.n + 2 * (branch * self.parent.m + edge) + (pos - 1)

    def labels_json(self) -> list[dict]:
        return [label.to_dict(i) for i, label in enumerate(self.labels)]


def _check_slot(edge: int, branch: int, m: int, k: int) -> None:
    if not 0 <= edge < m:
        raise InvalidParams(f"edge index {edge} outside [0, {m})")
    if not 0 <= branch < k:
        raise InvalidParams(f"branch {branch} outside [0, {k})")


def _check_k(k: int) -> int:
    if int(k) != k or k < 1:
        raise InvalidK(f"k must be a positive integer, got {k}")
    return int(k)


def sk_transform(g: Graph, k: int) -> TransformedGraph:
    k = _check_k(k)
    n, m = g.n, g.m
    edges = []
    labels: list[VertexLabel] = [Original(v) for v in range(n)]
    for branch in range(k):
        for e, (u, v) in enumerate(g.edges):
            mid = n + branch * m + e
            edges.append((u, mid))
            edges.append((v, mid))
            labels.append(SkMid(e, branch))
    return TransformedGraph(build_graph(n + k * m, edges), tuple(labels), k, "sk", g)


def s2k_transform(g: Graph, k: int) -> TransformedGraph:
    k = _check_k(k)
    n, m = g.n, g.m
    edges = []
    labels: list[VertexLabel] = [Original(v) for v in range(n)]
    for branch in range(k):
        for e, (u, v) in enumerate(g.edges):
            a = n + 2 * (branch * m + e)
            b = a + 1
            edges.extend([(u, a), (a, b), (b, v)])
            labels.append(S2kNode(e, branch, 1))
            labels.append(S2kNode(e, branch, 2))
    return TransformedGraph(build_graph(n + 2 * k * m, edges), tuple(labels), k, "s2k", g)


def transform(g: Graph, k: int, variant: str) -> TransformedGraph:
    if variant == "sk":
        return sk_transform(g, k)
    if variant == "s2k":
        return s2k_transform(g, k)
    raise InvalidParams(f"variant must be one of {VARIANTS}, got {variant!r}")


def predicted_sizes(n: int, m: int, k: int, r: int, variant: str) -> tuple[int, int]:
    """Closed-form ``(|V|, |E|)`` after ``r`` applications of the operator.

    ``sk``:  ``|E_r| = m (2k)^r``,  ``|V_r| = n + k m ((2k)^r - 1) / (2k - 1)``.
    ``s2k``: ``|E_r| = m (3k)^r``,  ``|V_r| = n + 2k m ((3k)^r - 1) / (3k - 1)``.
    Integer arithmetic throughout; the divisions are exact.
    """
    k = _check_k(k)
    if r < 0:
        raise InvalidParams(f"r must be >= 0, got {r}")
    if variant == "sk":
        growth = 2 * k
        vertices = n + k * m * (growth ** r - 1) // (growth - 1)
    elif variant == "s2k":
        growth = 3 * k
        vertices = n + 2 * k * m * (growth ** r - 1) // (growth - 1)
    else:
        raise InvalidParams(f"variant must be one of {VARIANTS}, got {variant!r}")
    return vertices, m * growth ** r


def iterate_transform(g: Graph, k: int, r: int, variant: str, cap: int | None = None) -> Graph:
    """Apply the operator ``r`` times; ``r = 0`` returns ``g`` itself."""
    k = _check_k(k)
    if r < 0:
        raise InvalidParams(f"r must be >= 0, got {r}")
    cap = _config.size_cap(_config.TRANSFORM_VERTEX_CAP) if cap is None else cap
    n_final, _ = predicted_sizes(g.n, g.m, k, r, variant)
    if n_final > cap:
        raise SizeCapExceeded(f"{variant}^{r} with k={k} has {n_final} vertices, cap is {cap}")
    out = g
    for _ in range(r):
        out = transform(out, k, variant).graph
    return out
