from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from specsub.estimators import ParallelSubdivision, SubdivisionWalkModel, check_graph
from specsub.graph import complete_graph, cycle_graph, spanning_tree_count_exact
from specsub.spectra import spectrum_of
from specsub.walks import hitting_times_oracle


def test_check_graph_inputs(k3):
    assert check_graph(k3) is k3
    assert check_graph((3, [(0, 1), (1, 2), (2, 0)])) == k3
    assert check_graph(nx.cycle_graph(4)) == cycle_graph(4)
    with pytest.raises(TypeError):
        check_graph("K3")


def test_params_and_clone():
    est = ParallelSubdivision(k=2, variant="s2k", r=2)
    assert est.get_params() == {"k": 2, "variant": "s2k", "r": 2}
    twin = clone(est).set_params(k=3)
    assert twin.k == 3 and est.k == 2


def test_fit_transform_and_predict(k3):
    est = ParallelSubdivision(k=1, variant="s2k")
    out = est.fit_transform(k3)
    assert (out.n, out.m) == (9, 9)
    assert (est.n_vertices_out_, est.n_edges_out_) == (9, 9)
    assert est.predict_spectrum().values == pytest.approx(spectrum_of(out).values, abs=1e-10)
    bundle = est.predict_invariants()
    assert bundle.kf_star == pytest.approx(240)
    assert bundle.tau_exact == spanning_tree_count_exact(out) == 9
    assert est.transform_labelled().graph == out


def test_not_fitted():
    with pytest.raises(NotFittedError):
        ParallelSubdivision().predict_spectrum()
    with pytest.raises(NotFittedError):
        SubdivisionWalkModel().predict([[0, 1]])
    with pytest.raises(ValueError):
        ParallelSubdivision(r=2).transform_labelled(complete_graph(3))


def test_walk_model(k3):
    model = SubdivisionWalkModel(k=2).fit(k3)
    big = model.subdivided_.graph
    pairs = [[a, b] for a in range(big.n) for b in range(big.n) if a != b]
    oracle = hitting_times_oracle(big)
    expected = np.array([oracle[a, b] for a, b in pairs])
    assert model.predict(pairs) == pytest.approx(expected, abs=1e-8)
    res = SubdivisionWalkModel(k=1, quantity="resistance").fit(k3)
    assert res.predict([3, 0])[0] == pytest.approx(5 / 6)
    with pytest.raises(ValueError):
        SubdivisionWalkModel(quantity="mixing").fit(k3)
