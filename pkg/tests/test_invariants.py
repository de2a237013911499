from __future__ import annotations

import math
from fractions import Fraction

import pytest

from specsub import as_published
from specsub import invariants as inv
from specsub.errors import InvalidParams, RoundingAmbiguity, UnsupportedK, ZeroMultiplicityError
from specsub.graph import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    is_bipartite,
    path_graph,
    random_connected_graph,
    spanning_tree_count_exact,
)
from specsub.spectra import Spectrum, predicted_spectrum_iterated, spectrum_of
from specsub.transforms import iterate_transform, predicted_sizes

BASES = [path_graph(2), path_graph(4), cycle_graph(5), complete_graph(3), complete_graph(4),
         complete_bipartite_graph(2, 3), random_connected_graph(8, 0.4, seed=7)]


@pytest.mark.parametrize(
    "g, kf, ke, tau",
    [
        (complete_graph(3), 8.0, 4 / 3, 3),
        (cycle_graph(6), 70.0, 35 / 6, 6),
        (path_graph(2), 1.0, 0.5, 1),
        (path_graph(3), 6.0, 1.5, 1),
    ],
)
def test_spectral_definitions(g, kf, ke, tau):
    spec = spectrum_of(g)
    assert inv.kf_star(spec, g.m) == pytest.approx(kf, rel=1e-12)
    assert inv.kemeny(spec) == pytest.approx(ke, rel=1e-12)
    est = inv.tau_spectral(spec, g.degrees)
    assert est.integer == tau
    assert est.value == pytest.approx(tau)


def test_disconnected_spectrum_rejected():
    with pytest.raises(ZeroMultiplicityError):
        inv.kemeny(Spectrum([0.0, 0.0, 2.0]))


def test_rounding_ambiguity():
    with pytest.raises(RoundingAmbiguity):
        inv.tau_spectral(Spectrum([0.0, 1.3]), [1, 1])


def test_tau_above_cap_stays_in_logs():
    est = inv.tau_spectral(spectrum_of(complete_graph(5)), complete_graph(5).degrees, cap=100)
    assert est.integer is None
    assert est.log_tau == pytest.approx(math.log(125))


def test_bundle(k3):
    b = inv.invariant_bundle(k3)
    assert b.kf_star == pytest.approx(2 * 3 * b.kemeny, rel=1e-10)
    assert b.tau_exact == 3
    assert abs(math.log(b.tau_exact) - b.log_tau) <= 1e-6
    assert set(b.to_json()) == {"kf_star", "kemeny", "log_tau", "tau_exact"}


def test_sk_step_examples():
    assert inv.kf_star_sk_step(8, 3, 3, 1) == 70
    assert as_published.sk_kf_k1_step(8, 3, 3) == 70
    assert inv.kf_star_sk_step(1, 2, 1, 1) == 6
    assert inv.kf_star_sk_step(8, 3, 3, 3) == 426


def test_sk_closed_dispatch():
    assert inv.kf_star_sk_closed(8, 3, 3, 3, 1) == pytest.approx(426)
    assert inv.kf_star_sk_closed(8, 3, 3, 4, 2) == pytest.approx(inv.kf_star_sk_iterated(8, 3, 3, 4, 2))
    assert inv.kf_star_sk_closed(8, 3, 3, 2, 1) == pytest.approx(16 * 8 + 4 * 3 * (1 + 12 - 6))
    assert inv.kf_star_sk_closed(8, 3, 3, 1, 2) == pytest.approx(inv.kf_star_sk_iterated(8, 3, 3, 1, 2))
    with pytest.raises(UnsupportedK):
        as_published.sk_kf_closed(8, 3, 3, 2, 1)
    with pytest.raises(UnsupportedK):
        as_published.sk_ke_closed(1, 3, 3, 1, 1)
    with pytest.raises(InvalidParams):
        inv.kf_star_sk_closed(8, 3, 3, 3, 0)


@pytest.mark.parametrize("g", BASES)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
@pytest.mark.parametrize("r", [1, 2])
def test_sk_kirchhoff_and_kemeny_agree_with_spectral_truth(g, k, r):
    spec = spectrum_of(g)
    truth = predicted_spectrum_iterated(spec, g.n, g.m, k, r, "sk", is_bipartite(g)[0])
    edges = predicted_sizes(g.n, g.m, k, r, "sk")[1]
    kf = inv.kf_star(spec, g.m)
    ke = inv.kemeny(spec)
    assert inv.kf_star_sk_iterated(kf, g.n, g.m, k, r) == pytest.approx(inv.kf_star(truth, edges), rel=1e-8)
    assert inv.kf_star_sk_closed(kf, g.n, g.m, k, r) == pytest.approx(inv.kf_star(truth, edges), rel=1e-8)
    assert inv.kemeny_sk(ke, g.n, g.m, k, r) == pytest.approx(inv.kemeny(truth), rel=1e-8)
    assert inv.kemeny_sk(ke, g.n, g.m, k, r) == pytest.approx(
        inv.kf_star_sk_closed(kf, g.n, g.m, k, r) / (2 * edges), rel=1e-10)


def test_sk_kemeny_triangle():
    assert inv.kemeny_sk(4 / 3, 3, 3, 1, 1) == pytest.approx(35 / 6)
    assert inv.kemeny_sk_step(4 / 3, 3, 3, 1) == pytest.approx(35 / 6)


def test_sk_tau_published_values():
    assert math.exp(inv.tau_sk_published(math.log(3), 3, 3, 1, 1)) == pytest.approx(12)
    assert math.exp(inv.tau_sk_published(0.0, 2, 1, 1, 1)) == pytest.approx(1)
    assert math.exp(inv.tau_sk_published(math.log(3), 3, 3, 2, 1)) == pytest.approx(384)
    assert math.exp(as_published.sk_log_tau_one_step(math.log(3), 3, 3, 1)) == pytest.approx(12)
    sk_k3 = iterate_transform(complete_graph(3), 1, 1, "sk")
    assert spanning_tree_count_exact(sk_k3) == 6
    assert spanning_tree_count_exact(iterate_transform(complete_graph(3), 2, 1, "sk")) == 192


def test_s2k_triangle_values(k3):
    spec = spectrum_of(k3)
    assert inv.kf_star_s2k(8, 3, 3, 1, 1, "spectral", spec, False) == pytest.approx(240)
    assert inv.kf_star_s2k(8, 3, 3, 1, 1) == 249
    assert inv.kemeny_s2k(4 / 3, 3, 3, 1, 1, "spectral", spec, False) == pytest.approx(40 / 3)
    assert inv.kemeny_s2k(4 / 3, 3, 3, 1, 1) == pytest.approx(83 / 6)
    assert inv.kf_star_s2k(8, 3, 3, 3, 1, form="closed") == pytest.approx(81 * 8 + 144 * 9 - 48 * 9 + 99)
    with pytest.raises(InvalidParams):
        inv.kf_star_s2k(8, 3, 3, 1, 1, "spectral")
    with pytest.raises(InvalidParams):
        inv.kf_star_s2k(8, 3, 3, 1, 2, form="one_step")
    with pytest.raises(InvalidParams):
        inv.kemeny_s2k(8, 3, 3, 1, 1, mode="guess")
    with pytest.raises(UnsupportedK):
        as_published.s2k_kf_closed(8, 3, 3, 3, 1)
    with pytest.raises(UnsupportedK):
        as_published.s2k_ke_closed(1, 3, 3, 3, 1)


@pytest.mark.parametrize("g", BASES)
@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("r", [1, 2])
def test_s2k_spectral_mode_matches_eigensolve(g, k, r):
    spec = spectrum_of(g)
    bip = is_bipartite(g)[0]
    big = iterate_transform(g, k, r, "s2k")
    observed = spectrum_of(big)
    kf = inv.kf_star_s2k(0.0, g.n, g.m, k, r, "spectral", spec, bip)
    ke = inv.kemeny_s2k(0.0, g.n, g.m, k, r, "spectral", spec, bip)
    assert kf == pytest.approx(inv.kf_star(observed, big.m), rel=1e-7)
    assert ke == pytest.approx(inv.kemeny(observed), rel=1e-7)
    assert ke * 2 * big.m == pytest.approx(kf, rel=1e-10)


def test_s2k_tau_published_values():
    assert math.exp(inv.tau_s2k_published(math.log(3), 3, 3, 1, 1)) == pytest.approx(72)
    assert math.exp(inv.tau_s2k_published(0.0, 2, 1, 1, 1)) == pytest.approx(2)
    assert spanning_tree_count_exact(iterate_transform(complete_graph(3), 1, 1, "s2k")) == 9
    assert inv.phi(1, 1, 3) == 0
    assert isinstance(inv.phi(2, 2, 3), Fraction)


@pytest.mark.parametrize("variant, k, r", [("sk", 1, 2), ("sk", 3, 1), ("s2k", 2, 1), ("s2k", 1, 2)])
def test_iterated_spectral_invariants(variant, k, r):
    g = complete_bipartite_graph(2, 3)
    big = iterate_transform(g, k, r, variant)
    bundle = inv.iterated_spectral_invariants(spectrum_of(g), big.degrees, g.n, g.m, k, r, variant, True)
    assert bundle.tau_exact == spanning_tree_count_exact(big)
    with pytest.raises(InvalidParams):
        inv.iterated_spectral_invariants(spectrum_of(g), big.degrees[:-1], g.n, g.m, k, r, variant, True)
