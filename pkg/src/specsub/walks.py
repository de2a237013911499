"""Hitting times, commute times and resistance distances.

The oracles work on any graph:

* :func:`hitting_times_oracle` solves the first-step equations
  ``h_i = 1 + (1/d_i) sum_{u~i} h_u``, ``h_j = 0`` for every target ``j``;
* :func:`resistance_oracle` uses the Moore-Penrose pseudoinverse of the
  combinatorial Laplacian, ``Omega_ij = L+_ii + L+_jj - 2 L+_ij``.

The ``sk_*`` functions express the same quantities on ``S_k(G)`` through
the quantities on ``G``, dispatching on whether each endpoint is an
original vertex or a subdivision vertex.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import _config
from . import as_published
from .errors import DegenerateEigenvalue, RefMismatch, SingularSystem, SizeCapExceeded
from .graph import Graph
from .spectra import EigenDecomposition
from .transforms import SkMid, TransformedGraph


def _check_cap(g: Graph, cap: int | None) -> None:
    cap = _config.size_cap(_config.EIGEN_VERTEX_CAP) if cap is None else cap
    if g.n > cap:
        raise SizeCapExceeded(f"dense walk oracles capped at n={cap}, got n={g.n}")


def hitting_times_oracle(g: Graph, cap: int | None = None) -> np.ndarray:
    """Matrix ``H`` with ``H[i, j] = E_i T_j`` (zero diagonal)."""
    _check_cap(g, cap)
    n = g.n
    p = g.adjacency_matrix() / g.degrees[:, None]
    h = np.zeros((n, n))
    ones = np.ones(n - 1)
    for j in range(n):
        idx = np.r_[0:j, j + 1:n]
        system = np.eye(n - 1) - p[np.ix_(idx, idx)]
        try:
            h[idx, j] = np.linalg.solve(system, ones)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(f"first-step system for target {j} is singular") from exc
    return h


def commute_times(hitting: np.ndarray) -> np.ndarray:
    return hitting + hitting.T


def _check_gap(sigma: np.ndarray) -> None:
    if np.any(np.abs(1.0 - sigma[1:]) <= 1e-12):
        raise DegenerateEigenvalue("a non-leading adjacency eigenvalue equals 1")


def hitting_time_spectral(decomp: EigenDecomposition, m: int, i: int, j: int,
                          printed_sign: bool = False) -> float:
    """``E_i T_j`` from the eigenpairs of ``N(G)``.

    ``2m sum_{a>=2} (v_aj^2/d_j - v_ai v_aj/sqrt(d_i d_j)) / (1 - sigma_a)``.
    ``printed_sign=True`` evaluates the variant with ``+`` on the cross term.
    """
    if i == j:
        raise ValueError("hitting time needs distinct vertices")
    sigma, vecs, d = decomp.sigma, decomp.vectors, decomp.degrees
    _check_gap(sigma)
    if printed_sign:
        return as_published.printed_sign_hitting_time(sigma, vecs, d, m, i, j)
    a = slice(1, None)
    terms = vecs[j, a] ** 2 / d[j] - vecs[i, a] * vecs[j, a] / math.sqrt(d[i] * d[j])
    return float(2.0 * m * np.sum(terms / (1.0 - sigma[a])))


def hitting_times_spectral(decomp: EigenDecomposition, m: int) -> np.ndarray:
    """All-pairs version of :func:`hitting_time_spectral` (corrected sign)."""
    sigma, vecs, d = decomp.sigma, decomp.vectors, decomp.degrees
    _check_gap(sigma)
    scaled = vecs[:, 1:] / np.sqrt(d)[:, None]
    weights = 1.0 / (1.0 - sigma[1:])
    g = (scaled * weights) @ scaled.T
    h = 2.0 * m * (np.diag(g)[None, :] - g)
    np.fill_diagonal(h, 0.0)
    return h


def resistance_oracle(g: Graph, cap: int | None = None) -> np.ndarray:
    """Effective resistance with unit resistors on every edge."""
    _check_cap(g, cap)
    mu, u = np.linalg.eigh(g.laplacian())
    keep = mu > 1e-9 * max(1.0, float(mu[-1]))
    pinv = (u[:, keep] / mu[keep]) @ u[:, keep].T
    diag = np.diag(pinv)
    omega = diag[:, None] + diag[None, :] - 2.0 * pinv
    omega = (omega + omega.T) / 2.0
    np.fill_diagonal(omega, 0.0)
    return omega


# -- S_k(G) vertex references -------------------------------------------------

@dataclass(frozen=True)
class OriginalRef:
    vertex: int


@dataclass(frozen=True)
class MidRef:
    s: int
    t: int
    branch: int = 0


SkVertexRef = Union[OriginalRef, MidRef]


def resolve_sk_ref(tg: TransformedGraph, vertex: int) -> SkVertexRef:
    """Reference for a vertex of ``S_k(G)`` in terms of ``G``."""
    if tg.variant != "sk":
        raise RefMismatch("vertex references are defined for S_k graphs only")
    if not 0 <= vertex < tg.graph.n:
        raise RefMismatch(f"vertex {vertex} outside [0, {tg.graph.n})")
    label = tg.labels[vertex]
    if isinstance(label, SkMid):
        s, t = tg.parent.edges[label.edge]
        return MidRef(s, t, label.branch)
    return OriginalRef(label.vertex)


_LABEL_V = re.compile(r"^\s*v\s*:\s*(\d+)\s*$")
_LABEL_E = re.compile(r"^\s*e\s*:\s*(\d+)\s*,\s*b\s*:\s*(\d+)\s*$")


def parse_sk_label(text: str, tg: TransformedGraph) -> int:
    """Vertex index of ``v:3`` (original vertex) or ``e:2,b:0`` (subdivision vertex)."""
    match = _LABEL_V.match(text)
    if match:
        v = int(match.group(1))
        if v >= tg.parent_n:
            raise RefMismatch(f"original vertex {v} outside [0, {tg.parent_n})")
        return v
    match = _LABEL_E.match(text)
    if match:
        try:
            return tg.sk_vertex(int(match.group(1)), int(match.group(2)))
        except ValueError as exc:
            raise RefMismatch(str(exc)) from exc
    raise RefMismatch(f"cannot parse vertex label {text!r}; use 'v:<i>' or 'e:<i>,b:<l>'")


def _check_ref(ref: SkVertexRef, n: int) -> None:
    if isinstance(ref, OriginalRef):
        ok = 0 <= ref.vertex < n
    elif isinstance(ref, MidRef):
        ok = 0 <= ref.s < n and 0 <= ref.t < n and ref.s != ref.t and ref.branch >= 0
    else:
        ok = False
    if not ok:
        raise RefMismatch(f"reference {ref!r} does not resolve against a base graph with {n} vertices")


def sk_hitting_time(base: np.ndarray, m: int, k: int, i: SkVertexRef, j: SkVertexRef) -> float:
    """``E_i T_j`` on ``S_k(G)`` from the hitting matrix ``base`` of ``G``."""
    n = base.shape[0]
    _check_ref(i, n)
    _check_ref(j, n)
    h = base
    if i == j:
        return 0.0
    if isinstance(i, OriginalRef) and isinstance(j, OriginalRef):
        return 4.0 * h[i.vertex, j.vertex]
    if isinstance(i, MidRef) and isinstance(j, OriginalRef):
        return 1.0 + 2.0 * h[i.s, j.vertex] + 2.0 * h[i.t, j.vertex]
    if isinstance(i, OriginalRef) and isinstance(j, MidRef):
        s, t, v = j.s, j.t, i.vertex
        return 2.0 * k * m - 1.0 + 2.0 * (h[v, s] + h[v, t]) - (h[t, s] + h[s, t])
    s, t, p, q = i.s, i.t, j.s, j.t
    return (2.0 * k * m + h[s, p] + h[s, q] + h[t, p] + h[t, q] - h[q, p] - h[p, q])


def sk_resistance(base: np.ndarray, k: int, i: SkVertexRef, j: SkVertexRef) -> float:
    """``Omega_ij`` on ``S_k(G)`` from the resistance matrix ``base`` of ``G``."""
    n = base.shape[0]
    _check_ref(i, n)
    _check_ref(j, n)
    w = base
    if i == j:
        return 0.0
    if isinstance(i, OriginalRef) and isinstance(j, OriginalRef):
        return 2.0 / k * w[i.vertex, j.vertex]
    if isinstance(i, OriginalRef):
        i, j = j, i
    if isinstance(j, OriginalRef):
        s, t, v = i.s, i.t, j.vertex
        return (k + 2.0 * w[s, v] + 2.0 * w[t, v] - w[s, t]) / (2.0 * k)
    s, t, p, q = i.s, i.t, j.s, j.t
    return (2.0 * k + w[s, p] + w[s, q] + w[t, p] + w[t, q] - w[p, q] - w[s, t]) / (2.0 * k)


def sk_commute_published(base_commute: np.ndarray, m: int, k: int,
                         i: SkVertexRef, j: SkVertexRef) -> float:
    """Printed commute-time closed form on ``S_k(G)``; no agreement is implied.

    Compare with :func:`sk_commute_oracle`.
    """
    n = base_commute.shape[0]
    _check_ref(i, n)
    _check_ref(j, n)
    if isinstance(i, OriginalRef) and isinstance(j, OriginalRef):
        return as_published.sk_commute(base_commute, m, k, 1, i.vertex, j.vertex)
    if isinstance(i, OriginalRef):
        i, j = j, i
    if isinstance(j, OriginalRef):
        return as_published.sk_commute(base_commute, m, k, 2, (i.s, i.t), j.vertex)
    return as_published.sk_commute(base_commute, m, k, 3, (i.s, i.t), (j.s, j.t))


def sk_commute_oracle(sk_resistance_matrix: np.ndarray, sk_m: int, a: int, b: int) -> float:
    """``C = 2 |E(S_k)| Omega`` on the transformed graph itself."""
    return 2.0 * sk_m * float(sk_resistance_matrix[a, b])
