"""Normalized Laplacian spectra of graphs and of their parallel subdivisions.

Two matrices are used throughout: the normalized Laplacian
``L = I - D^{-1/2} A D^{-1/2}`` with eigenvalues ``0 = lam_1 < lam_2 <= ... <= 2``
and the normalized adjacency ``N = I - L`` whose eigenvalues are
``sigma_a = 1 - lam_a``.  Spectral predictions for the subdivided graphs
come from the root maps

* ``sk``:  ``lam -> f1(lam), f2(lam) = (2 +- sqrt(4 - 2 lam)) / 2``
* ``s2k``: ``lam -> roots of 4 mu^3 - 12 mu^2 + 9 mu - lam``

plus fixed eigenvalues whose multiplicities depend only on ``n, m, k`` and
whether the base graph is bipartite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space

from . import _config
from .errors import (
    ConvergenceFailure,
    DomainError,
    InvalidParams,
    MultiplicityUnderflow,
    NumericalRankFailure,
    SizeCapExceeded,
    ZeroMultiplicityError,
)
from .graph import Graph, incidence_matrix, incidence_rank, is_bipartite
from .transforms import predicted_sizes

GROUPING_TOL = 1e-7
DOMAIN_CLAMP = 1e-12
DECOMP_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Sorted multiset of normalized Laplacian eigenvalues."""

    values: np.ndarray
    grouping_tol: float = GROUPING_TOL

    def __post_init__(self) -> None:
        vals = np.sort(np.asarray(self.values, dtype=float).ravel())
        if vals.size and (vals[0] < -self.grouping_tol or vals[-1] > 2.0 + self.grouping_tol):
            raise DomainError(
                f"normalized Laplacian eigenvalues must lie in [0, 2], got range "
                f"[{vals[0]:.3g}, {vals[-1]:.3g}]"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)

    def grouped(self) -> list[tuple[float, int]]:
        """Collapse runs of values closer than ``grouping_tol`` into (value, multiplicity)."""
        groups: list[list[float]] = []
        for x in self.values:
            if groups and x - groups[-1][-1] <= self.grouping_tol:
                groups[-1].append(float(x))
            else:
                groups.append([float(x)])
        return [(float(np.mean(g)), len(g)) for g in groups]

    def multiplicity(self, value: float) -> int:
        return int(np.sum(np.abs(self.values - value) <= self.grouping_tol))

    def nonzero(self) -> np.ndarray:
        """Eigenvalues ``lam_2..lam_n``; requires exactly one eigenvalue at 0."""
        zero = np.abs(self.values) <= self.grouping_tol
        count = int(zero.sum())
        if count != 1:
            raise ZeroMultiplicityError(
                f"expected a simple eigenvalue 0 (connected graph), found multiplicity {count}"
            )
        return self.values[~zero]

    def to_json(self) -> dict:
        return {
            "n": len(self),
            "values": [float(x) for x in self.values],
            "grouped": [{"value": v, "mult": c} for v, c in self.grouped()],
        }


@dataclass(frozen=True)
class EigenDecomposition:
    """Orthonormal eigenpairs of ``N(G)``, eigenvalues in descending order.

    ``vectors[:, a]`` is the eigenvector for ``sigma[a]``.  The leading
    vector is oriented so that its entries are positive.
    """

    sigma: np.ndarray
    vectors: np.ndarray
    degrees: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return int(self.sigma.size)

    @property
    def m(self) -> int:
        return int(self.degrees.sum()) // 2


def normalized_adjacency(g: Graph) -> np.ndarray:
    inv_sqrt = 1.0 / np.sqrt(g.degrees.astype(float))
    n = np.zeros((g.n, g.n))
    for u, v in g.edges:
        n[u, v] = n[v, u] = inv_sqrt[u] * inv_sqrt[v]
    return n


def normalized_laplacian(g: Graph) -> np.ndarray:
    """``I - D^{-1/2} A D^{-1/2}``: unit diagonal, ``-1/sqrt(d_i d_j)`` on edges."""
    return np.eye(g.n) - normalized_adjacency(g)


def eigen_decompose(g: Graph, cap: int | None = None) -> tuple[Spectrum, EigenDecomposition]:
    """Spectrum of ``L(G)`` and orthonormal eigenpairs of ``N(G)``.

    Both come from LAPACK's symmetric solver (``eigh``); the results are
    checked against the residual and orthogonality contracts before being
    returned.
    """
    cap = _config.size_cap(_config.EIGEN_VERTEX_CAP) if cap is None else cap
    if g.n > cap:
        raise SizeCapExceeded(f"dense eigensolver capped at n={cap}, got n={g.n}")
    nmat = normalized_adjacency(g)
    try:
        sigma, vecs = np.linalg.eigh(nmat)
        lam = np.linalg.eigvalsh(np.eye(g.n) - nmat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    sigma = sigma[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    if vecs[:, 0].sum() < 0:
        vecs[:, 0] *= -1.0
    if np.max(np.abs(lam - (1.0 - sigma))) > 1e-10:
        raise ConvergenceFailure("Laplacian and adjacency eigenvalues disagree beyond 1e-10")
    residual = np.max(np.abs(nmat @ vecs - vecs * sigma))
    gram = np.max(np.abs(vecs.T @ vecs - np.eye(g.n)))
    if residual > DECOMP_TOL or gram > DECOMP_TOL:
        raise ConvergenceFailure(f"eigendecomposition residual {residual:.2e}, orthogonality {gram:.2e}")
    lam = np.clip(lam, 0.0, 2.0)
    return Spectrum(lam), EigenDecomposition(sigma, vecs, g.degrees.astype(float))


def spectrum_of(g: Graph) -> Spectrum:
    return eigen_decompose(g)[0]


# -- root maps ------------------------------------------------------------------

def _check_domain(lam: float) -> float:
    lam = float(lam)
    if lam < -DOMAIN_CLAMP or lam > 2.0 + DOMAIN_CLAMP or math.isnan(lam):
        raise DomainError(f"eigenvalue {lam} outside [0, 2]")
    return min(max(lam, 0.0), 2.0)


def f_maps(lam: float) -> tuple[float, float]:
    """The two roots ``sigma`` of ``2 sigma^2 - 4 sigma + lam = 0``, larger first."""
    lam = _check_domain(lam)
    s = math.sqrt(4.0 - 2.0 * lam)
    return (2.0 + s) / 2.0, (2.0 - s) / 2.0


def _cubic(mu: float, lam: float) -> float:
    return ((4.0 * mu - 12.0) * mu + 9.0) * mu - lam


def cubic_roots(lam: float) -> tuple[float, float, float]:
    """Ascending real roots of ``4 mu^3 - 12 mu^2 + 9 mu - lam = 0``.

    With ``mu = 1 + t`` the cubic becomes ``t^3 - 3t/4 + (1 - lam)/4 = 0``
    whose trigonometric solution is ``t = cos(arccos(lam - 1)/3 - 2 pi j/3)``.
    Each root then gets one Newton step unless it sits at a double root
    (``mu = 1/2`` or ``3/2``) where the derivative vanishes.
    """
    lam = _check_domain(lam)
    theta = math.acos(min(1.0, max(-1.0, lam - 1.0))) / 3.0
    roots = []
    for j in range(3):
        mu = 1.0 + math.cos(theta - 2.0 * math.pi * j / 3.0)
        slope = (12.0 * mu - 24.0) * mu + 9.0
        if abs(slope) > 1e-6:
            mu -= _cubic(mu, lam) / slope
        roots.append(mu)
    roots.sort()
    return roots[0], roots[1], roots[2]


# -- predicted spectra --------------------------------------------------------

def _split_base(spec: Spectrum, n: int, bipartite: bool) -> tuple[list[float], bool]:
    """Eigenvalues other than 0 (and 2), snapped by ``grouping_tol``."""
    if len(spec) != n:
        raise InvalidParams(f"spectrum has {len(spec)} values but n={n}")
    tol = spec.grouping_tol
    zeros = 0
    twos = 0
    rest = []
    for x in spec.values:
        if abs(x) <= tol:
            zeros += 1
        elif abs(x - 2.0) <= tol:
            twos += 1
        else:
            rest.append(float(x))
    if zeros != 1:
        raise ZeroMultiplicityError(f"expected a simple eigenvalue 0, found multiplicity {zeros}")
    if twos != (1 if bipartite else 0):
        raise InvalidParams(
            f"bipartite={bipartite} but the spectrum has eigenvalue 2 with multiplicity {twos}"
        )
    return rest, twos == 1


def _count(value: int, what: str) -> int:
    if value < 0:
        raise MultiplicityUnderflow(f"multiplicity of {what} would be {value}")
    return value


def predicted_spectrum_sk(spec: Spectrum, n: int, m: int, k: int, bipartite: bool) -> Spectrum:
    """Spectrum of ``L(S_k(G))`` from the spectrum of ``L(G)``."""
    rest, _ = _split_base(spec, n, bipartite)
    out = [0.0, 2.0]
    for lam in rest:
        out.extend(f_maps(lam))
    ones = k * m - n + (2 if bipartite else 0)
    out.extend([1.0] * _count(ones, "eigenvalue 1"))
    if len(out) != n + k * m:
        raise InvalidParams(f"predicted {len(out)} eigenvalues, expected {n + k * m}")
    return Spectrum(np.array(out), spec.grouping_tol)


def predicted_spectrum_s2k(spec: Spectrum, n: int, m: int, k: int, bipartite: bool) -> Spectrum:
    """Spectrum of ``L(S_2k(G))`` from the spectrum of ``L(G)``."""
    rest, _ = _split_base(spec, n, bipartite)
    out = [0.0]
    for lam in rest:
        out.extend(cubic_roots(lam))
    if bipartite:
        out.append(2.0)
        halves = threes = k * m - n + 2
    else:
        halves, threes = k * m - n, k * m - n + 2
    out.extend([0.5] * _count(halves, "eigenvalue 1/2"))
    out.extend([1.5] * _count(threes, "eigenvalue 3/2"))
    if len(out) != n + 2 * k * m:
        raise InvalidParams(f"predicted {len(out)} eigenvalues, expected {n + 2 * k * m}")
    return Spectrum(np.array(out), spec.grouping_tol)


def predicted_spectrum_iterated(spec: Spectrum, n: int, m: int, k: int, r: int, variant: str,
                                bipartite: bool, cap: int | None = None) -> Spectrum:
    """Spectrum after ``r`` applications, by repeating the one-step prediction.

    ``S_k`` output is always bipartite; ``S_2k`` keeps the parity of its input.
    """
    if r < 1:
        raise InvalidParams(f"r must be >= 1, got {r}")
    cap = _config.size_cap(_config.TRANSFORM_VERTEX_CAP) if cap is None else cap
    final_n, _ = predicted_sizes(n, m, k, r, variant)
    if final_n > cap:
        raise SizeCapExceeded(f"predicted spectrum would have {final_n} values, cap is {cap}")
    if variant not in ("sk", "s2k"):
        raise InvalidParams(f"unknown variant {variant!r}")
    step = predicted_spectrum_sk if variant == "sk" else predicted_spectrum_s2k
    cur_n, cur_m, cur_bip = n, m, bipartite
    out = spec
    for i in range(r):
        out = step(out, cur_n, cur_m, k, cur_bip)
        cur_n, cur_m = predicted_sizes(n, m, k, i + 1, variant)
        cur_bip = True if variant == "sk" else cur_bip
    return out


@dataclass(frozen=True)
class MatchReport:
    passed: bool
    length_a: int
    length_b: int
    max_abs_diff: float
    argmax: int | None
    tol: float
    reason: str | None
    grouped_a: list[tuple[float, int]]
    grouped_b: list[tuple[float, int]]


def spectra_match(a: Spectrum, b: Spectrum, tol: float) -> MatchReport:
    """Pointwise comparison of two sorted spectra."""
    if len(a) != len(b):
        return MatchReport(False, len(a), len(b), math.inf, None, tol, "LengthMismatch",
                           a.grouped(), b.grouped())
    if len(a) == 0:
        return MatchReport(True, 0, 0, 0.0, None, tol, None, [], [])
    diff = np.abs(a.values - b.values)
    i = int(np.argmax(diff))
    worst = float(diff[i])
    passed = worst <= tol
    return MatchReport(passed, len(a), len(b), worst, i, tol, None if passed else "ValueMismatch",
                       a.grouped(), b.grouped())


# -- explicit eigenbasis of N(S_k(G)) -----------------------------------------

@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues and column eigenvectors of a symmetric matrix."""

    values: np.ndarray
    vectors: np.ndarray
    families: tuple[str, ...]


def helmert_rows(k: int) -> np.ndarray:
    """``k - 1`` orthonormal vectors of length ``k`` orthogonal to all-ones.

    Row ``j`` (0-based) has ``j + 1`` equal positive entries followed by
    ``-(j + 1)`` at position ``j + 1``, normalized to unit length.
    """
    rows = np.zeros((max(k - 1, 0), k))
    for j in range(1, k):
        rows[j - 1, :j] = 1.0
        rows[j - 1, j] = -float(j)
        rows[j - 1] /= math.sqrt(j * (j + 1))
    return rows


def incidence_kernel_basis(g: Graph) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of the incidence matrix."""
    basis = null_space(incidence_matrix(g))
    expected = g.m - incidence_rank(g)
    if basis.shape[1] != expected:
        raise NumericalRankFailure(
            f"incidence kernel has dimension {basis.shape[1]}, expected {expected}"
        )
    return basis


def sk_eigenbasis(g: Graph, k: int, decomp: EigenDecomposition,
                  bipartite_tol: float = 1e-8) -> EigenPairs:
    """Eigenpairs of ``N(S_k(G))`` assembled from those of ``N(G)``.

    With ``w_a = B^T D^{-1/2} v_a`` (``|w_a|^2 = 1 + sigma_a``) and vertex
    blocks ordered as (original, branch 0, ..., branch k-1):

    * ``(v_a, +-w_a/sqrt(k(1+sigma_a)), ...)/sqrt(2)`` with eigenvalue
      ``+-sqrt((1 + sigma_a)/2)`` for every ``sigma_a != -1``;
    * ``(0, h[0] w_a, ..., h[k-1] w_a)/sqrt(1+sigma_a)`` for each Helmert
      row ``h``, eigenvalue 0;
    * ``(0, .., y, .., 0)`` for every kernel vector ``y`` of ``B`` in every
      branch block, eigenvalue 0;
    * for bipartite ``G`` the vector ``(v_n, 0, ..., 0)`` with ``sigma_n = -1``,
      eigenvalue 0.
    """
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    n, m = g.n, g.m
    size = n + k * m
    b = incidence_matrix(g)
    inv_sqrt_d = 1.0 / np.sqrt(g.degrees.astype(float))
    w = b.T @ (inv_sqrt_d[:, None] * decomp.vectors)  # (m, n): column a is w_a
    kernel = incidence_kernel_basis(g)
    helmert = helmert_rows(k)
    bipartite = is_bipartite(g)[0]

    values: list[float] = []
    columns: list[np.ndarray] = []
    families: list[str] = []
    for a in range(n):
        sigma = float(decomp.sigma[a])
        v = decomp.vectors[:, a]
        if bipartite and abs(1.0 + sigma) <= bipartite_tol:
            col = np.zeros(size)
            col[:n] = v
            values.append(0.0)
            columns.append(col)
            families.append("bipartite_vn")
            continue
        scale = 1.0 + sigma
        root = math.sqrt(scale / 2.0)
        tail = w[:, a] / math.sqrt(k * scale)
        for sign in (1.0, -1.0):
            col = np.empty(size)
            col[:n] = v
            col[n:] = sign * np.tile(tail, k)
            values.append(sign * root)
            columns.append(col / math.sqrt(2.0))
            families.append("paired")
        unit = w[:, a] / math.sqrt(scale)
        for h in helmert:
            col = np.zeros(size)
            col[n:] = np.kron(h, unit)
            values.append(0.0)
            columns.append(col)
            families.append("branch_difference")
    for branch in range(k):
        for z in range(kernel.shape[1]):
            col = np.zeros(size)
            start = n + branch * m
            col[start:start + m] = kernel[:, z]
            values.append(0.0)
            columns.append(col)
            families.append("kernel")
    if len(columns) != size:
        raise NumericalRankFailure(f"assembled {len(columns)} eigenvectors, expected {size}")
    return EigenPairs(np.array(values), np.column_stack(columns), tuple(families))


def residual_mass(g: Graph, decomp: EigenDecomposition) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the kernel residual-mass identity, one entry per edge.

    Left: ``sum_z y_z[e]^2`` over an orthonormal kernel basis of ``B``.
    Right: ``1 - 1/m - sum_a (v_as/sqrt(d_s) + v_at/sqrt(d_t))^2 / (1 + sigma_a)``
    over ``a >= 2``, omitting the ``sigma = -1`` vector of a bipartite graph.
    """
    kernel = incidence_kernel_basis(g)
    left = np.sum(kernel ** 2, axis=1)
    inv_sqrt_d = 1.0 / np.sqrt(g.degrees.astype(float))
    scaled = inv_sqrt_d[:, None] * decomp.vectors
    bipartite = is_bipartite(g)[0]
    last = g.n - 1 if bipartite else g.n
    right = np.full(g.m, 1.0 - 1.0 / g.m)
    for e, (s, t) in enumerate(g.edges):
        acc = 0.0
        for a in range(1, last):
            acc += (scaled[s, a] + scaled[t, a]) ** 2 / (1.0 + decomp.sigma[a])
        right[e] -= acc
    return left, right
