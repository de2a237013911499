"""scikit-learn style wrappers around the functional API.

The estimators take a single graph as ``X``; there is no sample axis.  They
exist so the subdivision operator and the closed-form predictors can sit
in the usual ``fit`` / ``transform`` / ``predict`` workflow and expose their
hyperparameters through ``get_params`` / ``set_params``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from . import invariants as inv
from .graph import Graph, build_graph, is_bipartite
from .spectra import Spectrum, eigen_decompose, predicted_spectrum_iterated
from .transforms import iterate_transform, predicted_sizes, transform
from .walks import (
    hitting_times_spectral,
    resistance_oracle,
    resolve_sk_ref,
    sk_hitting_time,
    sk_resistance,
)


def check_graph(X) -> Graph:
    """Coerce ``X`` into a :class:`Graph`.

    Accepts a ``Graph``, an ``(n, edges)`` pair, or any object with
    ``number_of_nodes()`` and ``edges()`` whose nodes are ``0..n-1``.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, tuple) and len(X) == 2:
        n, edges = X
        return build_graph(int(n), edges)
    if hasattr(X, "number_of_nodes") and hasattr(X, "edges"):
        return build_graph(int(X.number_of_nodes()), list(X.edges()))
    raise TypeError(f"cannot interpret {type(X).__name__} as a graph")


def _check_fitted(est, attr: str) -> None:
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


class ParallelSubdivision(BaseEstimator, TransformerMixin):
    """Apply ``S_k`` or ``S_2k`` ``r`` times and predict the resulting spectrum.

    Parameters
    ----------
    k : int
        Number of parallel paths per edge.
    variant : {"sk", "s2k"}
        Path length 2 (``sk``) or 3 (``s2k``).
    r : int
        Number of applications.
    """

    def __init__(self, k: int = 1, variant: str = "sk", r: int = 1):
        self.k = k
        self.variant = variant
        self.r = r

    def fit(self, X, y=None):
        g = check_graph(X)
        spec, _ = eigen_decompose(g)
        self.graph_ = g
        self.spectrum_ = spec
        self.bipartite_ = is_bipartite(g)[0]
        self.n_vertices_out_, self.n_edges_out_ = predicted_sizes(g.n, g.m, self.k, self.r, self.variant)
        return self

    def transform(self, X) -> Graph:
        """The ``r``-fold transform of ``X``."""
        return iterate_transform(check_graph(X), self.k, self.r, self.variant)

    def transform_labelled(self, X=None):
        """Single application with vertex labels; requires ``r == 1``."""
        if self.r != 1:
            raise ValueError("labelled output is defined for r = 1 only")
        if X is None:
            _check_fitted(self, "graph_")
            X = self.graph_
        return transform(check_graph(X), self.k, self.variant)

    def predict_spectrum(self) -> Spectrum:
        _check_fitted(self, "spectrum_")
        g = self.graph_
        return predicted_spectrum_iterated(self.spectrum_, g.n, g.m, self.k, self.r,
                                           self.variant, self.bipartite_)

    def predict_invariants(self) -> inv.InvariantBundle:
        """Kf*, Ke and tau of the transformed graph from the predicted spectrum."""
        _check_fitted(self, "spectrum_")
        g = self.graph_
        return inv.iterated_spectral_invariants(self.spectrum_, self.transform(g).degrees, g.n, g.m,
                                                self.k, self.r, self.variant, self.bipartite_)


class SubdivisionWalkModel(BaseEstimator):
    """Hitting times and resistances on ``S_k(G)`` from quantities of ``G``.

    ``predict`` takes pairs of ``S_k(G)`` vertex indices and returns the
    closed-form values.

    Parameters
    ----------
    k : int
        Number of parallel paths per edge.
    quantity : {"hitting", "resistance"}
    """

    def __init__(self, k: int = 1, quantity: str = "hitting"):
        self.k = k
        self.quantity = quantity

    def fit(self, X, y=None):
        if self.quantity not in ("hitting", "resistance"):
            raise ValueError(f"quantity must be 'hitting' or 'resistance', got {self.quantity!r}")
        g = check_graph(X)
        self.graph_ = g
        self.subdivided_ = transform(g, self.k, "sk")
        if self.quantity == "hitting":
            self.base_ = hitting_times_spectral(eigen_decompose(g)[1], g.m)
        else:
            self.base_ = resistance_oracle(g)
        return self

    def predict(self, pairs) -> np.ndarray:
        _check_fitted(self, "base_")
        pairs = np.asarray(pairs, dtype=int).reshape(-1, 2)
        out = np.empty(len(pairs))
        for idx, (a, b) in enumerate(pairs):
            ra = resolve_sk_ref(self.subdivided_, int(a))
            rb = resolve_sk_ref(self.subdivided_, int(b))
            if self.quantity == "hitting":
                out[idx] = sk_hitting_time(self.base_, self.graph_.m, self.k, ra, rb)
            else:
                out[idx] = sk_resistance(self.base_, self.k, ra, rb)
        return out
