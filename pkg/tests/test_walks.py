from __future__ import annotations

import itertools

import numpy as np
import pytest

from specsub import as_published
from specsub.errors import RefMismatch, SizeCapExceeded
from specsub.graph import complete_bipartite_graph, complete_graph, cycle_graph, path_graph, random_connected_graph
from specsub.spectra import eigen_decompose
from specsub.transforms import transform
from specsub.walks import (
    MidRef,
    OriginalRef,
    commute_times,
    hitting_time_spectral,
    hitting_times_oracle,
    hitting_times_spectral,
    parse_sk_label,
    resistance_oracle,
    resolve_sk_ref,
    sk_commute_oracle,
    sk_commute_published,
    sk_hitting_time,
    sk_resistance,
)

CORPUS = [path_graph(2), path_graph(4), cycle_graph(5), complete_graph(3), complete_graph(4),
          complete_bipartite_graph(2, 3), random_connected_graph(8, 0.4, seed=7)]


def test_hitting_oracle_small_cases(k3):
    h = hitting_times_oracle(k3)
    assert h == pytest.approx(2.0 * (1 - np.eye(3)))
    p3 = hitting_times_oracle(path_graph(3))
    assert p3[0, 2] == pytest.approx(4.0)
    assert p3[1, 2] == pytest.approx(3.0)
    assert p3[0, 1] == pytest.approx(1.0)
    assert p3[1, 0] == pytest.approx(3.0)
    with pytest.raises(SizeCapExceeded):
        hitting_times_oracle(k3, cap=2)


def test_resistance_oracle(k3):
    assert resistance_oracle(k3)[0, 1] == pytest.approx(2 / 3)
    assert resistance_oracle(path_graph(4))[0, 3] == pytest.approx(3.0)


@pytest.mark.parametrize("g", CORPUS)
def test_commute_is_2m_resistance(g):
    assert commute_times(hitting_times_oracle(g)) == pytest.approx(2 * g.m * resistance_oracle(g), abs=1e-9)


@pytest.mark.parametrize("g", CORPUS)
def test_spectral_hitting_matches_oracle(g):
    dec = eigen_decompose(g)[1]
    oracle = hitting_times_oracle(g)
    assert hitting_times_spectral(dec, g.m) == pytest.approx(oracle, abs=1e-8)
    for i, j in [(0, 1), (1, 0), (0, g.n - 1)]:
        if i != j:
            assert hitting_time_spectral(dec, g.m, i, j) == pytest.approx(oracle[i, j], abs=1e-8)


def test_printed_sign_differs_on_triangle(k3):
    dec = eigen_decompose(k3)[1]
    assert hitting_time_spectral(dec, 3, 0, 1, printed_sign=True) == pytest.approx(2 / 3)
    assert hitting_time_spectral(dec, 3, 0, 1) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        hitting_time_spectral(dec, 3, 1, 1)


def test_refs_and_labels(k3):
    tg = transform(k3, 2, "sk")
    assert resolve_sk_ref(tg, 1) == OriginalRef(1)
    assert resolve_sk_ref(tg, tg.sk_vertex(2, 1)) == MidRef(1, 2, 1)
    assert parse_sk_label("v:2", tg) == 2
    assert parse_sk_label(" e:2 , b:1 ", tg) == tg.sk_vertex(2, 1)
    for bad in ("v:3", "e:3,b:0", "e:0,b:2", "x:1"):
        with pytest.raises(RefMismatch):
            parse_sk_label(bad, tg)
    with pytest.raises(RefMismatch):
        resolve_sk_ref(transform(k3, 1, "s2k"), 0)
    with pytest.raises(RefMismatch):
        sk_hitting_time(np.zeros((3, 3)), 3, 1, OriginalRef(5), OriginalRef(0))


def test_canonical_triangle_values(k3):
    tg = transform(k3, 1, "sk")
    h = hitting_times_oracle(k3)
    w = resistance_oracle(k3)
    assert sk_hitting_time(h, 3, 1, OriginalRef(0), OriginalRef(1)) == pytest.approx(8.0)
    assert sk_resistance(w, 1, MidRef(0, 1), OriginalRef(0)) == pytest.approx(5 / 6)
    omega = resistance_oracle(tg.graph)
    mid = tg.sk_vertex(0, 0)
    assert sk_commute_oracle(omega, tg.graph.m, mid, 0) == pytest.approx(10.0)
    assert sk_commute_published(2 * 3 * w, 3, 1, MidRef(0, 1), OriginalRef(0)) == pytest.approx(15.0)
    assert sk_commute_published(2 * 3 * w, 3, 1, OriginalRef(0), OriginalRef(1)) == pytest.approx(8.0)
    assert sk_commute_oracle(omega, 6, 0, 1) == pytest.approx(16.0)


@pytest.mark.parametrize("g", CORPUS)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_closed_forms_match_oracles_on_all_pairs(g, k):
    tg = transform(g, k, "sk")
    h_base = hitting_times_oracle(g)
    w_base = resistance_oracle(g)
    h = hitting_times_oracle(tg.graph)
    w = resistance_oracle(tg.graph)
    refs = [resolve_sk_ref(tg, v) for v in range(tg.graph.n)]
    for a, b in itertools.permutations(range(tg.graph.n), 2):
        assert sk_hitting_time(h_base, g.m, k, refs[a], refs[b]) == pytest.approx(h[a, b], abs=1e-6)
        assert sk_resistance(w_base, k, refs[a], refs[b]) == pytest.approx(w[a, b], abs=1e-8)


def test_printed_case3_reverse_is_off(k3):
    tg = transform(k3, 1, "sk")
    h_base = hitting_times_oracle(k3)
    h = hitting_times_oracle(tg.graph)
    i, j = tg.sk_vertex(0, 0), tg.sk_vertex(1, 0)
    printed = as_published.sk_case3_reverse_hitting(h_base, 3, 1, (0, 1), (0, 2))
    assert printed == pytest.approx(12.0)
    assert h[j, i] == pytest.approx(8.0)
