from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specsub.errors import (
    DomainError,
    InvalidParams,
    MultiplicityUnderflow,
    SizeCapExceeded,
    ZeroMultiplicityError,
)
from specsub.graph import complete_graph, cycle_graph, is_bipartite, path_graph, random_connected_graph
from specsub.spectra import (
    Spectrum,
    cubic_roots,
    eigen_decompose,
    f_maps,
    helmert_rows,
    incidence_kernel_basis,
    normalized_adjacency,
    normalized_laplacian,
    predicted_spectrum_iterated,
    predicted_spectrum_s2k,
    predicted_spectrum_sk,
    residual_mass,
    sk_eigenbasis,
    spectra_match,
    spectrum_of,
)
from specsub.transforms import iterate_transform, transform

lam = st.floats(min_value=0.0, max_value=2.0, allow_nan=False)


@given(lam)
def test_f_maps_solve_the_quadratic(x):
    a, b = f_maps(x)
    assert a >= b
    for s in (a, b):
        assert abs(2 * s * s - 4 * s + x) <= 1e-12
    assert math.isclose(a + b, 2.0, abs_tol=1e-12)
    assert math.isclose(a * b, x / 2, abs_tol=1e-12)


@given(lam)
def test_cubic_roots_solve_the_cubic(x):
    roots = cubic_roots(x)
    assert list(roots) == sorted(roots)
    for mu in roots:
        assert abs(4 * mu ** 3 - 12 * mu ** 2 + 9 * mu - x) <= 1e-12
        assert -1e-12 <= mu <= 2 + 1e-12
    assert math.isclose(sum(roots), 3.0, abs_tol=1e-12)
    assert math.isclose(roots[0] * roots[1] * roots[2], x / 4, abs_tol=1e-12)


def test_cubic_double_roots():
    assert cubic_roots(0.0) == pytest.approx((0.0, 1.5, 1.5), abs=1e-7)
    assert cubic_roots(2.0) == pytest.approx((0.5, 0.5, 2.0), abs=1e-7)
    assert cubic_roots(1.0) == pytest.approx((1 - math.sqrt(3) / 2, 1.0, 1 + math.sqrt(3) / 2), abs=1e-12)


def test_root_map_domain():
    with pytest.raises(DomainError):
        f_maps(2.1)
    with pytest.raises(DomainError):
        cubic_roots(-0.5)
    assert f_maps(2.0 + 1e-13) == (1.0, 1.0)


def test_spectrum_basics():
    s = Spectrum([1.5, 0.0, 1.5])
    assert s.values.tolist() == [0.0, 1.5, 1.5]
    assert s.grouped() == [(0.0, 1), (1.5, 2)]
    assert s.multiplicity(1.5) == 2
    assert s.to_json() == {"n": 3, "values": [0.0, 1.5, 1.5],
                           "grouped": [{"value": 0.0, "mult": 1}, {"value": 1.5, "mult": 2}]}
    with pytest.raises(ValueError):
        s.values[0] = 1.0
    with pytest.raises(DomainError):
        Spectrum([0.0, 2.5])
    with pytest.raises(ZeroMultiplicityError):
        Spectrum([0.0, 0.0, 1.0]).nonzero()


def test_normalized_matrices(k3):
    lap = normalized_laplacian(k3)
    assert np.allclose(np.diag(lap), 1.0)
    assert lap[0, 1] == pytest.approx(-0.5)
    assert np.allclose(normalized_adjacency(k3) + lap, np.eye(3))


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete_graph(3), [0.0, 1.5, 1.5]),
        (path_graph(2), [0.0, 2.0]),
        (cycle_graph(4), [0.0, 1.0, 1.0, 2.0]),
        (cycle_graph(6), [0.0, 0.5, 0.5, 1.5, 1.5, 2.0]),
    ],
)
def test_known_spectra(g, expected):
    assert spectrum_of(g).values == pytest.approx(expected, abs=1e-12)


def test_eigen_decompose_contract():
    g = random_connected_graph(8, 0.4, seed=7)
    spec, dec = eigen_decompose(g)
    assert np.all(np.diff(dec.sigma) <= 1e-12)
    assert np.all(dec.vectors[:, 0] > 0)
    assert np.allclose(spec.values, np.sort(1 - dec.sigma), atol=1e-10)
    assert dec.n == 8 and dec.m == g.m
    with pytest.raises(SizeCapExceeded):
        eigen_decompose(g, cap=4)


def test_triangle_subdivision_is_hexagon_spectrum(k3):
    pred = predicted_spectrum_sk(spectrum_of(k3), 3, 3, 1, False)
    assert pred.values == pytest.approx([0, 0.5, 0.5, 1.5, 1.5, 2], abs=1e-12)


def test_sk_multiplicity_of_one(k3, c4):
    assert predicted_spectrum_sk(spectrum_of(k3), 3, 3, 2, False).multiplicity(1.0) == 3
    pred = predicted_spectrum_sk(spectrum_of(c4), 4, 4, 1, True)
    assert len(pred) == 8 and pred.multiplicity(1.0) == 2


def test_s2k_multiplicities(k3, c4):
    pred = predicted_spectrum_s2k(spectrum_of(c4), 4, 4, 1, True)
    assert len(pred) == 12
    assert pred.multiplicity(0.5) == 2 and pred.multiplicity(1.5) == 2
    pred = predicted_spectrum_s2k(spectrum_of(k3), 3, 3, 1, False)
    assert pred.multiplicity(1.5) == 2
    assert pred.values == pytest.approx(spectrum_of(cycle_graph(9)).values, abs=1e-12)


def test_prediction_input_checks(k3):
    spec = spectrum_of(k3)
    with pytest.raises(InvalidParams):
        predicted_spectrum_sk(spec, 4, 3, 1, False)
    with pytest.raises(InvalidParams):
        predicted_spectrum_sk(spec, 3, 3, 1, True)
    with pytest.raises(MultiplicityUnderflow):
        predicted_spectrum_s2k(spectrum_of(complete_graph(5)), 5, 1, 1, False)
    with pytest.raises(InvalidParams):
        predicted_spectrum_iterated(spec, 3, 3, 1, 0, "sk", False)
    with pytest.raises(InvalidParams):
        predicted_spectrum_iterated(spec, 3, 3, 1, 1, "s3k", False)
    with pytest.raises(SizeCapExceeded):
        predicted_spectrum_iterated(spec, 3, 3, 3, 4, "sk", False, cap=100)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(3, 7), p=st.floats(0.3, 0.9), seed=st.integers(0, 10_000),
       k=st.integers(1, 3), variant=st.sampled_from(["sk", "s2k"]), r=st.integers(1, 2))
def test_prediction_matches_eigensolve(n, p, seed, k, variant, r):
    g = random_connected_graph(n, p, seed)
    pred = predicted_spectrum_iterated(spectrum_of(g), g.n, g.m, k, r, variant, is_bipartite(g)[0])
    observed = spectrum_of(iterate_transform(g, k, r, variant))
    assert spectra_match(pred, observed, 1e-7).passed


def test_spectra_match_reports():
    a = Spectrum([0.0, 1.0, 2.0])
    assert spectra_match(a, Spectrum([0.0, 2.0]), 1e-8).reason == "LengthMismatch"
    rep = spectra_match(a, Spectrum([0.0, 1.1, 2.0]), 1e-8)
    assert not rep.passed and rep.reason == "ValueMismatch" and rep.argmax == 1
    assert rep.max_abs_diff == pytest.approx(0.1)
    assert spectra_match(Spectrum([]), Spectrum([]), 1e-8).passed


def test_helmert_rows():
    h = helmert_rows(4)
    assert h.shape == (3, 4)
    assert np.allclose(h @ h.T, np.eye(3))
    assert np.allclose(h.sum(axis=1), 0.0)
    assert helmert_rows(1).shape == (0, 1)


def test_incidence_kernel(k3, c4):
    assert incidence_kernel_basis(k3).shape == (3, 0)
    basis = incidence_kernel_basis(c4)
    assert basis.shape == (4, 1)


def _check_pairs(g, k):
    _, dec = eigen_decompose(g)
    pairs = sk_eigenbasis(g, k, dec)
    big = normalized_adjacency(transform(g, k, "sk").graph)
    res = np.max(np.abs(big @ pairs.vectors - pairs.vectors * pairs.values))
    gram = np.max(np.abs(pairs.vectors.T @ pairs.vectors - np.eye(pairs.vectors.shape[1])))
    return pairs, res, gram


def test_eigenbasis_triangle_k2(k3):
    pairs, res, gram = _check_pairs(k3, 2)
    assert pairs.vectors.shape == (9, 9)
    assert int(np.sum(np.abs(pairs.values) < 1e-12)) == 3
    assert res <= 1e-8 and gram <= 1e-8


@pytest.mark.parametrize("g", [cycle_graph(4), cycle_graph(5), random_connected_graph(8, 0.4, seed=7)])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_eigenbasis_families(g, k):
    pairs, res, gram = _check_pairs(g, k)
    assert res <= 1e-8 and gram <= 1e-8
    assert set(pairs.families) <= {"paired", "branch_difference", "kernel", "bipartite_vn"}
    assert ("bipartite_vn" in pairs.families) == is_bipartite(g)[0]


@pytest.mark.parametrize("g", [complete_graph(4), cycle_graph(4), cycle_graph(5), random_connected_graph(8, 0.4, seed=7)])
def test_residual_mass(g):
    left, right = residual_mass(g, eigen_decompose(g)[1])
    assert np.max(np.abs(left - right)) <= 1e-8
