"""Parallel subdivision graphs: spectra, random-walk quantities and invariants."""
from __future__ import annotations

from .errors import SpecSubError
from .estimators import ParallelSubdivision, SubdivisionWalkModel, check_graph
from .graph import (
    Graph,
    build_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    generate,
    is_bipartite,
    path_graph,
    random_connected_graph,
    read_edgelist,
    spanning_tree_count_exact,
    write_edgelist,
)
from .invariants import InvariantBundle, invariant_bundle, kemeny, kf_star, tau_spectral
from .spectra import (
    EigenDecomposition,
    Spectrum,
    cubic_roots,
    eigen_decompose,
    f_maps,
    predicted_spectrum_iterated,
    predicted_spectrum_s2k,
    predicted_spectrum_sk,
    sk_eigenbasis,
    spectra_match,
)
from .transforms import TransformedGraph, iterate_transform, predicted_sizes, s2k_transform, sk_transform, transform
from .verify import CorpusSpec, VerificationReport, default_corpus, run_verification

__version__ = "0.1.0"

__all__ = [
    "CorpusSpec", "EigenDecomposition", "Graph", "InvariantBundle", "ParallelSubdivision",
    "SpecSubError", "Spectrum", "SubdivisionWalkModel", "TransformedGraph", "VerificationReport",
    "build_graph", "check_graph", "complete_bipartite_graph", "complete_graph", "cubic_roots",
    "cycle_graph", "default_corpus", "eigen_decompose", "f_maps", "generate", "invariant_bundle",
    "is_bipartite", "iterate_transform", "kemeny", "kf_star", "path_graph",
    "predicted_sizes", "predicted_spectrum_iterated", "predicted_spectrum_s2k",
    "predicted_spectrum_sk", "random_connected_graph", "read_edgelist", "run_verification",
    "s2k_transform", "sk_eigenbasis", "sk_transform", "spanning_tree_count_exact",
    "spectra_match", "tau_spectral", "transform", "write_edgelist",
]
