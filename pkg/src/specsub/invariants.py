"""Degree-Kirchhoff index, Kemeny's constant and spanning-tree counts.

Spectral definitions are the ground truth:

* ``Kf*(G) = 2m sum_{i>=2} 1/lam_i``
* ``Ke(G)  = sum_{i>=2} 1/lam_i``
* ``prod_i d_i * prod_{i>=2} lam_i = 2m tau(G)``

The ``*_published`` and ``mode="published"`` paths evaluate the printed
closed forms from :mod:`specsub.as_published`; ``mode="spectral"`` applies
the definitions to the predicted spectrum of the iterated graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _config
from . import as_published
from .errors import InvalidParams, RoundingAmbiguity
from .graph import Graph, spanning_tree_count_exact
from .spectra import Spectrum, eigen_decompose, predicted_spectrum_iterated
from .transforms import predicted_sizes

# Largest spanning-tree count recovered as an exact integer from a float
# spectrum; beyond it comparisons stay in log space.
TAU_ROUNDING_CAP = 10 ** 9
ROUNDING_RTOL = 1e-4


def kf_star(spec: Spectrum, m: int) -> float:
    return 2.0 * m * kemeny(spec)


def kemeny(spec: Spectrum) -> float:
    return float(np.sum(1.0 / spec.nonzero()))


@dataclass(frozen=True)
class TauEstimate:
    log_tau: float
    integer: int | None

    @property
    def value(self) -> float:
        return math.exp(self.log_tau)


def tau_spectral(spec: Spectrum, degrees, cap: int = TAU_ROUNDING_CAP) -> TauEstimate:
    """Spanning-tree count from the normalized Laplacian spectrum, in log space.

    The integer is filled in when the estimate is at most ``cap``.
    """
    degrees = np.asarray(degrees, dtype=float)
    two_m = float(degrees.sum())
    log_tau = float(np.sum(np.log(degrees)) + np.sum(np.log(spec.nonzero())) - math.log(two_m))
    integer = None
    if log_tau <= math.log(cap):
        estimate = math.exp(log_tau)
        integer = round(estimate)
        if abs(estimate - integer) > ROUNDING_RTOL * max(1.0, abs(estimate)):
            raise RoundingAmbiguity(f"tau estimate {estimate!r} is not close to an integer")
    return TauEstimate(log_tau, integer)


@dataclass(frozen=True)
class InvariantBundle:
    kf_star: float
    kemeny: float
    log_tau: float
    tau_exact: int | None = None

    def to_json(self) -> dict:
        return {"kf_star": self.kf_star, "kemeny": self.kemeny, "log_tau": self.log_tau,
                "tau_exact": self.tau_exact}


def invariant_bundle(g: Graph, spec: Spectrum | None = None) -> InvariantBundle:
    spec = eigen_decompose(g)[0] if spec is None else spec
    exact = None
    if g.n <= _config.size_cap(_config.MATRIX_TREE_VERTEX_CAP):
        exact = spanning_tree_count_exact(g)
    tau = tau_spectral(spec, g.degrees)
    return InvariantBundle(kf_star(spec, g.m), kemeny(spec), tau.log_tau,
                           exact if exact is not None else tau.integer)


# -- S_k ------------------------------------------------------------------------------

def kf_star_sk_step(kf: float, n: int, m: int, k: int) -> float:
    """``Kf*(S_k(G)) = 8k Kf*(G) + 2km(1 + 2km - 2n)``."""
    return as_published.sk_kf_one_step(kf, n, m, k)


def kf_star_sk_iterated(kf: float, n: int, m: int, k: int, r: int) -> float:
    """``r``-fold step recursion with sizes threaded through ``predicted_sizes``."""
    for i in range(r):
        cur_n, cur_m = predicted_sizes(n, m, k, i, "sk")
        kf = kf_star_sk_step(kf, cur_n, cur_m, k)
    return kf


def kf_star_sk_closed(kf: float, n: int, m: int, k: int, r: int) -> float:
    """Printed closed form for ``Kf*(S_k^r(G))``.

    ``k > 2`` uses the general closed form, ``k = 2`` its dedicated one
    and ``k = 1`` iterates the one-step identity.
    """
    if r < 1:
        raise InvalidParams(f"r must be >= 1, got {r}")
    if k > 2:
        return as_published.sk_kf_closed(kf, n, m, k, r)
    if k == 2:
        return as_published.sk_kf_k2_closed(kf, n, m, r)
    for i in range(r):
        cur_n, cur_m = predicted_sizes(n, m, 1, i, "sk")
        kf = as_published.sk_kf_k1_step(kf, cur_n, cur_m)
    return kf


def kemeny_sk_step(ke: float, n: int, m: int, k: int) -> float:
    return as_published.sk_ke_one_step(ke, n, m, k)


def kemeny_sk(ke: float, n: int, m: int, k: int, r: int) -> float:
    """Printed ``Ke(S_k^r(G))``; ``k = 1`` goes through ``Kf* / (2|E_r|)``."""
    if r < 1:
        raise InvalidParams(f"r must be >= 1, got {r}")
    if k > 2:
        return as_published.sk_ke_closed(ke, n, m, k, r)
    if k == 2:
        return as_published.sk_ke_k2_closed(ke, n, m, r)
    kf = kf_star_sk_closed(2.0 * m * ke, n, m, 1, r)
    return kf / (2.0 * predicted_sizes(n, m, 1, r, "sk")[1])


def tau_sk_published(log_tau: float, n: int, m: int, k: int, r: int) -> float:
    """Log of the printed ``tau(S_k^r(G))``."""
    return as_published.sk_log_tau(log_tau, n, m, k, r)


# -- S_2k --------------------------------------------------------------------------

def _iterated(spectrum: Spectrum | None, n, m, k, r, variant, bipartite) -> Spectrum:
    if spectrum is None or bipartite is None:
        raise InvalidParams("spectral mode needs the base spectrum and its bipartite flag")
    return predicted_spectrum_iterated(spectrum, n, m, k, r, variant, bipartite)


def kf_star_s2k(kf: float, n: int, m: int, k: int, r: int, mode: str = "published",
                spectrum: Spectrum | None = None, bipartite: bool | None = None,
                form: str = "auto") -> float:
    """``Kf*(S_2k^r(G))``.

    ``mode="published"`` evaluates the printed expression: the one-step
    identity when ``r == 1`` and the closed form otherwise (``form`` forces
    ``"one_step"`` or ``"closed"``).  ``mode="spectral"`` sums reciprocals
    of the predicted spectrum.
    """
    if mode == "spectral":
        spec = _iterated(spectrum, n, m, k, r, "s2k", bipartite)
        return kf_star(spec, predicted_sizes(n, m, k, r, "s2k")[1])
    if mode != "published":
        raise InvalidParams(f"mode must be 'published' or 'spectral', got {mode!r}")
    if form == "auto":
        form = "one_step" if r == 1 else "closed"
    if form == "one_step":
        if r != 1:
            raise InvalidParams("the one-step identity covers r = 1 only")
        return as_published.s2k_kf_one_step(kf, n, m, k)
    if k == 3:
        return as_published.s2k_kf_k3_closed(kf, n, m, r)
    return as_published.s2k_kf_closed(kf, n, m, k, r)


def kemeny_s2k(ke: float, n: int, m: int, k: int, r: int, mode: str = "published",
               spectrum: Spectrum | None = None, bipartite: bool | None = None,
               form: str = "auto") -> float:
    """``Ke(S_2k^r(G))``; modes as in :func:`kf_star_s2k`."""
    if mode == "spectral":
        return kemeny(_iterated(spectrum, n, m, k, r, "s2k", bipartite))
    if mode != "published":
        raise InvalidParams(f"mode must be 'published' or 'spectral', got {mode!r}")
    if form == "auto":
        form = "one_step" if r == 1 else "closed"
    if form == "one_step":
        if r != 1:
            raise InvalidParams("the one-step identity covers r = 1 only")
        return as_published.s2k_ke_one_step(ke, n, m, k)
    if k == 3:
        return as_published.s2k_ke_k3_closed(ke, n, m, r)
    return as_published.s2k_ke_closed(ke, n, m, k, r)


def tau_s2k_published(log_tau: float, n: int, m: int, k: int, r: int) -> float:
    """Log of the printed ``tau(S_2k^r(G))``."""
    return as_published.s2k_log_tau(log_tau, n, m, k, r)


phi = as_published.phi


def iterated_spectral_invariants(spectrum: Spectrum, degrees_final, n: int, m: int, k: int,
                                 r: int, variant: str, bipartite: bool) -> InvariantBundle:
    """Invariants of the ``r``-th iterate computed from its predicted spectrum."""
    spec = predicted_spectrum_iterated(spectrum, n, m, k, r, variant, bipartite)
    edges = predicted_sizes(n, m, k, r, variant)[1]
    if len(spec) != len(degrees_final):
        raise InvalidParams("degree sequence does not match the predicted spectrum")
    tau = tau_spectral(spec, degrees_final)
    return InvariantBundle(kf_star(spec, edges), kemeny(spec), tau.log_tau, tau.integer)
