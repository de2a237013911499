"""Corpus-wide comparison of closed forms against independent oracles.

Every scheduled check produces one :class:`Row` keyed by
``(claim, graph, k, r, item)``.  A row compares a claimed value (a
prediction or a printed formula) with an oracle value and carries one of
three statuses:

``pass``
    both values finite and within tolerance;
``discrepancy``
    both values finite and outside tolerance;
``error``
    the computation raised, or produced a non-finite value.

Rows are sorted before emission and floats are written with 12
significant digits so that repeated runs are byte-identical.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator

import numpy as np

from . import as_published
from . import invariants as inv
from .errors import SpecSubError
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
)
from .spectra import (
    eigen_decompose,
    predicted_spectrum_iterated,
    residual_mass,
    sk_eigenbasis,
    spectra_match,
    normalized_adjacency,
)
from .transforms import iterate_transform, predicted_sizes, transform
from .walks import (
    MidRef,
    OriginalRef,
    hitting_time_spectral,
    hitting_times_oracle,
    hitting_times_spectral,
    resistance_oracle,
    resolve_sk_ref,
    sk_commute_oracle,
    sk_commute_published,
    sk_hitting_time,
    sk_resistance,
)

SIG_DIGITS = 12
_ERRORS = (SpecSubError, ValueError, ArithmeticError, np.linalg.LinAlgError)
STATUSES = ("pass", "discrepancy", "error")

# Default tolerances per claim: (value, "abs" | "rel" | "log").
DEFAULT_TOLS: dict[str, tuple[float, str]] = {
    "spectrum_sk": (1e-8, "abs"),
    "spectrum_s2k": (1e-8, "abs"),
    "spectrum_iterated": (1e-7, "abs"),
    "eigenbasis_lemma41": (1e-8, "abs"),
    "hitting_thm_cases": (1e-6, "abs"),
    "resistance_corollary": (1e-8, "abs"),
    "commute_corollary_published": (1e-6, "abs"),
    "kf_sk": (1e-8, "rel"),
    "ke_sk": (1e-8, "rel"),
    "tau_sk_published": (1e-6, "log"),
    "kf_s2k_published": (1e-8, "rel"),
    "ke_s2k_published": (1e-8, "rel"),
    "tau_s2k_published": (1e-6, "log"),
    "tau_ground_truth": (0.0, "abs"),
    "lemma25_sign": (1e-6, "abs"),
}
CLAIMS: tuple[str, ...] = tuple(DEFAULT_TOLS)

# Matrix-Tree (exact big-integer elimination) runs on graphs up to this size
# during verification; larger ones fall back to an eigensolve oracle.
VERIFY_MATRIX_TREE_N = 120


# -- corpus -----------------------------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    """Named base graphs plus the ``k`` and ``r`` sets to sweep."""

    graphs: tuple[tuple[str, Graph], ...]
    sk_ks: tuple[int, ...] = (1, 2, 3)
    s2k_ks: tuple[int, ...] = (1, 2)
    rs: tuple[int, ...] = (1, 2)

    def __post_init__(self) -> None:
        names = [name for name, _ in self.graphs]
        if len(set(names)) != len(names):
            raise ValueError(f"corpus graph names must be unique, got {names}")
        for ks in (self.sk_ks, self.s2k_ks):
            if any(int(k) != k or k < 1 for k in ks):
                raise ValueError(f"k values must be positive integers, got {ks}")
        if any(int(r) != r or r < 1 for r in self.rs):
            raise ValueError(f"r values must be positive integers, got {self.rs}")

    @property
    def is_empty(self) -> bool:
        return not self.graphs or not (self.sk_ks or self.s2k_ks)


def default_corpus() -> CorpusSpec:
    graphs = (
        ("P2", path_graph(2)),
        ("P4", path_graph(4)),
        ("C4", cycle_graph(4)),
        ("C5", cycle_graph(5)),
        ("C6", cycle_graph(6)),
        ("K3", complete_graph(3)),
        ("K4", complete_graph(4)),
        ("K2,3", complete_bipartite_graph(2, 3)),
        ("random(8,0.4,7)", random_connected_graph(8, 0.4, seed=7)),
    )
    return CorpusSpec(graphs)


def load_corpus(path: str | Path) -> CorpusSpec:
    """Read a JSON corpus file.

    ``{"graphs": [...], "sk_ks": [...], "s2k_ks": [...], "rs": [...]}`` where
    each graph entry has a ``name`` and one of ``{"kind": ..., "params": [...]}``,
    ``{"n": ..., "edges": [[u, v], ...]}`` or ``{"edgelist": path}`` (relative
    paths resolve against the corpus file).
    """
    path = Path(path)
    data = json.loads(path.read_text())
    graphs = []
    for entry in data.get("graphs", []):
        name = str(entry["name"])
        if "kind" in entry:
            g = generate(entry["kind"], *entry.get("params", []))
        elif "edges" in entry:
            g = build_graph(int(entry["n"]), entry["edges"])
        elif "edgelist" in entry:
            g = read_edgelist(path.parent / entry["edgelist"])
        else:
            raise ValueError(f"graph {name!r} needs 'kind', 'edges' or 'edgelist'")
        graphs.append((name, g))
    defaults = CorpusSpec(())
    return CorpusSpec(
        tuple(graphs),
        tuple(int(k) for k in data.get("sk_ks", defaults.sk_ks)),
        tuple(int(k) for k in data.get("s2k_ks", defaults.s2k_ks)),
        tuple(int(r) for r in data.get("rs", defaults.rs)),
    )


# -- rows -------------------------------------------------------------------

@dataclass(frozen=True)
class Row:
    claim: str
    graph: str
    k: int
    r: int
    item: str
    published: float | None
    oracle: float | None
    abs_diff: float | None
    rel_diff: float | None
    tol: float
    tol_kind: str
    status: str
    detail: str = ""

    @property
    def key(self) -> tuple:
        return (self.claim, self.graph, self.k, self.r, self.item)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "graph": self.graph,
            "k": self.k,
            "r": self.r,
            "item": self.item,
            "published": _fmt(self.published),
            "oracle": _fmt(self.oracle),
            "abs_diff": _fmt(self.abs_diff),
            "rel_diff": _fmt(self.rel_diff),
            "tol": _fmt(self.tol),
            "tol_kind": self.tol_kind,
            "status": self.status,
            "detail": self.detail,
        }


CSV_FIELDS = ("claim", "graph", "k", "r", "item", "published", "oracle", "abs_diff",
              "rel_diff", "tol", "tol_kind", "status", "detail")


def _fmt(x: float | None) -> float | None:
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.{SIG_DIGITS}g}")


def compare(claimed: float, oracle: float, tol: float, kind: str) -> tuple[str, float, float]:
    """Status, absolute and relative difference for one pair of values.

    ``kind="log"`` compares ``log`` values; the relative difference is then
    that of the exponentiated values.
    """
    claimed, oracle = float(claimed), float(oracle)
    if not (math.isfinite(claimed) and math.isfinite(oracle)):
        return "error", math.nan, math.nan
    abs_diff = abs(claimed - oracle)
    if kind == "log":
        rel_diff = abs(math.expm1(min(abs_diff, 700.0)))
        measure = abs_diff
    else:
        rel_diff = abs_diff / abs(oracle) if oracle != 0 else (0.0 if abs_diff == 0 else math.inf)
        measure = abs_diff if kind == "abs" else abs_diff / max(1.0, abs(oracle))
    return ("pass" if measure <= tol else "discrepancy"), abs_diff, rel_diff


@dataclass
class VerificationReport:
    rows: list[Row] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.rows = sorted(self.rows, key=lambda row: row.key)
        keys = [row.key for row in self.rows]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate verification row keys")

    @property
    def summary(self) -> dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for row in self.rows:
            counts[row.status] += 1
        counts["total"] = len(self.rows)
        return counts

    def exit_code(self) -> int:
        s = self.summary
        if s["error"]:
            return 1
        return 2 if s["discrepancy"] else 0

    def select(self, claim: str | None = None, graph: str | None = None,
               k: int | None = None, r: int | None = None, item: str | None = None) -> list[Row]:
        out = []
        for row in self.rows:
            if ((claim is None or row.claim == claim) and (graph is None or row.graph == graph)
                    and (k is None or row.k == k) and (r is None or row.r == r)
                    and (item is None or row.item == item)):
                out.append(row)
        return out

    def to_jsonl(self) -> str:
        lines = [json.dumps(row.to_dict(), sort_keys=True) for row in self.rows]
        lines.append(json.dumps({"summary": self.summary}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            d = row.to_dict()
            writer.writerow({key: "" if d[key] is None else d[key] for key in CSV_FIELDS})
        return buf.getvalue()


# -- row builders ---------------------------------------------------------------

class _Collector:
    def __init__(self, tol_override: float | None) -> None:
        self.rows: list[Row] = []
        self.tol_override = tol_override

    def _tol(self, claim: str) -> tuple[float, str]:
        tol, kind = DEFAULT_TOLS[claim]
        return (tol if self.tol_override is None else self.tol_override), kind

    def add(self, claim: str, graph: str, k: int, r: int, item: str,
            claimed: float, oracle: float, detail: str = "",
            tol_spec: tuple[float, str] | None = None) -> None:
        tol, kind = self._tol(claim) if tol_spec is None else tol_spec
        status, abs_diff, rel_diff = compare(claimed, oracle, tol, kind)
        self.rows.append(Row(claim, graph, k, r, item, claimed, oracle, abs_diff, rel_diff,
                             tol, kind, status, detail))

    def error(self, claim: str, graph: str, k: int, r: int, item: str, exc: BaseException) -> None:
        tol, kind = self._tol(claim)
        self.rows.append(Row(claim, graph, k, r, item, None, None, None, None, tol, kind,
                             "error", f"{type(exc).__name__}: {exc}"))

    def guarded(self, claim: str, graph: str, k: int, r: int, items: Iterable[str],
                fn: Callable[[], None]) -> None:
        """Run ``fn``; on failure emit one error row per scheduled item."""
        try:
            fn()
        except _ERRORS as exc:
            done = {row.item for row in self.rows
                    if (row.claim, row.graph, row.k, row.r) == (claim, graph, k, r)}
            pending = [item for item in items if item not in done]
            if not pending:
                pending = ["error"]
            for item in pending:
                self.error(claim, graph, k, r, item, exc)

    def add_worst(self, claim: str, graph: str, k: int, r: int, item: str,
                  claimed: np.ndarray, oracle: np.ndarray, labels: list[str] | None = None) -> None:
        """One row for the pair of arrays with the largest absolute difference."""
        claimed = np.asarray(claimed, dtype=float).ravel()
        oracle = np.asarray(oracle, dtype=float).ravel()
        if claimed.size == 0:
            return
        diff = np.abs(claimed - oracle)
        diff = np.where(np.isfinite(diff), diff, np.inf)
        i = int(np.argmax(diff))
        detail = f"worst of {claimed.size}"
        if labels is not None:
            detail += f" at {labels[i]}"
        self.add(claim, graph, k, r, item, claimed[i], oracle[i], detail)


@dataclass
class _Base:
    """Per-graph quantities reused across claims."""

    name: str
    g: Graph
    bipartite: bool
    spec: object
    decomp: object
    hitting: np.ndarray
    resistance: np.ndarray
    log_tau: float
    kf: float
    ke: float


def _base(name: str, g: Graph) -> _Base:
    spec, decomp = eigen_decompose(g)
    return _Base(name, g, is_bipartite(g)[0], spec, decomp, hitting_times_oracle(g),
                 resistance_oracle(g), math.log(spanning_tree_count_exact(g)),
                 inv.kf_star(spec, g.m), inv.kemeny(spec))


def _ref_label(ref) -> str:
    if isinstance(ref, OriginalRef):
        return f"v{ref.vertex}"
    return f"mid({ref.s},{ref.t};b{ref.branch})"


def _case(a, b) -> str:
    if isinstance(a, OriginalRef) and isinstance(b, OriginalRef):
        return "case1"
    if isinstance(a, MidRef) and isinstance(b, MidRef):
        return "case3"
    return "case2_forward" if isinstance(a, MidRef) else "case2_reverse"


def _check_sign(c: _Collector, b: _Base) -> None:
    n = b.g.n
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    labels = [f"({i},{j})" for i, j in pairs]
    oracle = [b.hitting[i, j] for i, j in pairs]
    corrected = hitting_times_spectral(b.decomp, b.g.m)
    c.add_worst("lemma25_sign", b.name, 0, 0, "corrected",
                [corrected[i, j] for i, j in pairs], oracle, labels)
    printed = [hitting_time_spectral(b.decomp, b.g.m, i, j, printed_sign=True) for i, j in pairs]
    c.add_worst("lemma25_sign", b.name, 0, 0, "as_printed", printed, oracle, labels)


def _check_spectrum_one_step(c: _Collector, b: _Base, variant: str, k: int) -> None:
    claim = "spectrum_sk" if variant == "sk" else "spectrum_s2k"
    tg = transform(b.g, k, variant)
    predicted = predicted_spectrum_iterated(b.spec, b.g.n, b.g.m, k, 1, variant, b.bipartite)
    observed = eigen_decompose(tg.graph)[0]
    _add_match(c, claim, b.name, k, 1, "values", predicted, observed)


def _add_match(c: _Collector, claim, graph, k, r, item, predicted, observed) -> None:
    match = spectra_match(predicted, observed, DEFAULT_TOLS[claim][0])
    if match.reason == "LengthMismatch":
        c.add(claim, graph, k, r, item, len(predicted), len(observed), "LengthMismatch")
        return
    i = match.argmax if match.argmax is not None else 0
    c.add(claim, graph, k, r, item, predicted.values[i], observed.values[i],
          f"worst of {len(observed)} at index {i}")


def _check_iterated(c: _Collector, b: _Base, variant: str, k: int, r: int,
                    iterated: Graph, observed) -> None:
    predicted = predicted_spectrum_iterated(b.spec, b.g.n, b.g.m, k, r, variant, b.bipartite)
    _add_match(c, "spectrum_iterated", b.name, k, r, variant, predicted, observed)
    if variant == "sk" and r >= 2:
        family, ones = as_published.sk_iterated_multiplicities(b.g.n, b.g.m, k, r)
        prev_n = predicted_sizes(b.g.n, b.g.m, k, r - 1, "sk")[0]
        vals = observed.values
        c.add("spectrum_iterated", b.name, k, r, "printed_ones_multiplicity", ones,
              observed.multiplicity(1.0))
        upper = int(np.sum((vals > 1.0 + 1e-7) & (vals < 2.0 - 1e-7)))
        c.add("spectrum_iterated", b.name, k, r, "printed_family_count", family, upper,
              f"oracle counts eigenvalues in (1, 2); the last step maps {prev_n - 2} values there")


def _check_eigenbasis(c: _Collector, b: _Base, k: int) -> None:
    claim = "eigenbasis_lemma41"
    tg = transform(b.g, k, "sk")
    pairs = sk_eigenbasis(b.g, k, b.decomp)
    nmat = normalized_adjacency(tg.graph)
    residual = float(np.max(np.abs(nmat @ pairs.vectors - pairs.vectors * pairs.values)))
    gram = pairs.vectors.T @ pairs.vectors
    ortho = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
    c.add(claim, b.name, k, 1, "residual", residual, 0.0)
    c.add(claim, b.name, k, 1, "orthonormality", ortho, 0.0)
    left, right = residual_mass(b.g, b.decomp)
    c.add_worst(claim, b.name, k, 1, "residual_mass", right, left,
                [f"edge {e}" for e in range(b.g.m)])


@dataclass
class _WalkContext:
    tg: object
    base_h: np.ndarray
    oracle_h: np.ndarray
    oracle_w: np.ndarray
    refs: list


def _walk_context(b: _Base, k: int, printed_sign: bool) -> _WalkContext:
    tg = transform(b.g, k, "sk")
    if printed_sign:
        n = b.g.n
        base_h = np.zeros((n, n))
        for i in range(n):
            for j in range(n):
                if i != j:
                    base_h[i, j] = hitting_time_spectral(b.decomp, b.g.m, i, j, printed_sign=True)
    else:
        base_h = hitting_times_spectral(b.decomp, b.g.m)
    refs = [resolve_sk_ref(tg, v) for v in range(tg.graph.n)]
    return _WalkContext(tg, base_h, hitting_times_oracle(tg.graph), resistance_oracle(tg.graph), refs)


def _check_hitting(c: _Collector, b: _Base, k: int, ctx: _WalkContext) -> None:
    refs = ctx.refs
    buckets: dict[str, tuple[list, list, list]] = {}
    for a in range(len(refs)):
        for z in range(len(refs)):
            if a == z:
                continue
            bucket = buckets.setdefault(_case(refs[a], refs[z]), ([], [], []))
            bucket[0].append(sk_hitting_time(ctx.base_h, b.g.m, k, refs[a], refs[z]))
            bucket[1].append(ctx.oracle_h[a, z])
            bucket[2].append(f"{_ref_label(refs[a])}->{_ref_label(refs[z])}")
    for case, (claimed, oracle, labels) in buckets.items():
        c.add_worst("hitting_thm_cases", b.name, k, 1, case, claimed, oracle, labels)
    # Printed reverse direction for two subdivision vertices.
    if b.g.m >= 2 or k >= 2:
        i, j = _case3_pair(ctx.tg)
        ri, rj = refs[i], refs[j]
        printed = as_published.sk_case3_reverse_hitting(ctx.base_h, b.g.m, k, (ri.s, ri.t), (rj.s, rj.t))
        c.add("hitting_thm_cases", b.name, k, 1, "case3_reverse_as_printed", printed,
              ctx.oracle_h[j, i], f"{_ref_label(rj)}->{_ref_label(ri)}")


def _check_resistance(c: _Collector, b: _Base, k: int, ctx: _WalkContext) -> None:
    refs = ctx.refs
    buckets: dict[str, tuple[list, list, list]] = {}
    for a in range(len(refs)):
        for z in range(a + 1, len(refs)):
            case = _case(refs[a], refs[z]).split("_")[0]
            bucket = buckets.setdefault(case, ([], [], []))
            bucket[0].append(sk_resistance(b.resistance, k, refs[a], refs[z]))
            bucket[1].append(ctx.oracle_w[a, z])
            bucket[2].append(f"{_ref_label(refs[a])}--{_ref_label(refs[z])}")
    for case, (claimed, oracle, labels) in buckets.items():
        c.add_worst("resistance_corollary", b.name, k, 1, case, claimed, oracle, labels)


def _check_commute(c: _Collector, b: _Base, k: int, ctx: _WalkContext) -> None:
    base_commute = 2.0 * b.g.m * b.resistance
    refs = ctx.refs
    for case, (a, z) in _commute_pairs(ctx.tg).items():
        published = sk_commute_published(base_commute, b.g.m, k, refs[a], refs[z])
        oracle = sk_commute_oracle(ctx.oracle_w, ctx.tg.graph.m, a, z)
        c.add("commute_corollary_published", b.name, k, 1, case, published, oracle,
              f"{_ref_label(refs[a])}<->{_ref_label(refs[z])}")


def _walk_rows(c: _Collector, b: _Base, k: int, printed_sign: bool) -> None:
    claims = ("hitting_thm_cases", "resistance_corollary", "commute_corollary_published")
    try:
        ctx = _walk_context(b, k, printed_sign)
    except _ERRORS as exc:
        for claim in claims:
            c.error(claim, b.name, k, 1, "setup", exc)
        return
    c.guarded(claims[0], b.name, k, 1, ("case1",), lambda: _check_hitting(c, b, k, ctx))
    c.guarded(claims[1], b.name, k, 1, ("case1",), lambda: _check_resistance(c, b, k, ctx))
    c.guarded(claims[2], b.name, k, 1, ("case1",), lambda: _check_commute(c, b, k, ctx))


def _case3_pair(tg) -> tuple[int, int]:
    if tg.parent_m >= 2:
        return tg.sk_vertex(0, 0), tg.sk_vertex(1, 0)
    return tg.sk_vertex(0, 0), tg.sk_vertex(0, 1)


def _commute_pairs(tg) -> dict[str, tuple[int, int]]:
    """Canonical pairs: two endpoints of edge 0, a mid and its smaller endpoint, two mids."""
    u, v = tg.parent.edges[0]
    pairs = {"case1": (u, v), "case2": (tg.sk_vertex(0, 0), u)}
    if tg.parent_m >= 2 or tg.k >= 2:
        pairs["case3"] = _case3_pair(tg)
    return pairs


def _oracle_invariants(g: Graph, observed) -> tuple[float, float, float]:
    """Kf*, Ke and log tau of an explicitly built graph."""
    kf = inv.kf_star(observed, g.m)
    ke = inv.kemeny(observed)
    if g.n <= VERIFY_MATRIX_TREE_N:
        log_tau = math.log(spanning_tree_count_exact(g))
    else:
        log_tau = inv.tau_spectral(observed, g.degrees).log_tau
    return kf, ke, log_tau


def _check_sk_invariants(c: _Collector, b: _Base, k: int, r: int, iterated: Graph, observed) -> None:
    n, m = b.g.n, b.g.m
    kf_o, ke_o, log_tau_o = _oracle_invariants(iterated, observed)
    c.add("kf_sk", b.name, k, r, "step", inv.kf_star_sk_iterated(b.kf, n, m, k, r), kf_o)
    c.add("kf_sk", b.name, k, r, "closed", inv.kf_star_sk_closed(b.kf, n, m, k, r), kf_o)
    c.add("ke_sk", b.name, k, r, "closed", inv.kemeny_sk(b.ke, n, m, k, r), ke_o)
    c.add("tau_sk_published", b.name, k, r, "log_tau",
          inv.tau_sk_published(b.log_tau, n, m, k, r), log_tau_o,
          f"published {_exp_text(inv.tau_sk_published(b.log_tau, n, m, k, r))}, "
          f"oracle {_exp_text(log_tau_o)}")


def _check_s2k_invariants(c: _Collector, b: _Base, k: int, r: int, iterated: Graph, observed) -> None:
    n, m = b.g.n, b.g.m
    kf_o, ke_o, log_tau_o = _oracle_invariants(iterated, observed)
    forms = ("one_step", "closed") if r == 1 else ("closed",)
    for form in forms:
        c.add("kf_s2k_published", b.name, k, r, form,
              inv.kf_star_s2k(b.kf, n, m, k, r, form=form), kf_o)
        c.add("ke_s2k_published", b.name, k, r, form,
              inv.kemeny_s2k(b.ke, n, m, k, r, form=form), ke_o)
    c.add("kf_s2k_published", b.name, k, r, "spectral",
          inv.kf_star_s2k(b.kf, n, m, k, r, "spectral", b.spec, b.bipartite), kf_o)
    c.add("ke_s2k_published", b.name, k, r, "spectral",
          inv.kemeny_s2k(b.ke, n, m, k, r, "spectral", b.spec, b.bipartite), ke_o)
    published = inv.tau_s2k_published(b.log_tau, n, m, k, r)
    c.add("tau_s2k_published", b.name, k, r, "log_tau", published, log_tau_o,
          f"published {_exp_text(published)}, oracle {_exp_text(log_tau_o)}")


def _exp_text(log_value: float) -> str:
    if log_value < 600:
        return f"{math.exp(log_value):.{SIG_DIGITS}g}"
    return f"exp({log_value:.{SIG_DIGITS}g})"


def _check_tau_ground_truth(c: _Collector, b: _Base, variant: str, k: int, r: int,
                            iterated: Graph) -> None:
    predicted = predicted_spectrum_iterated(b.spec, b.g.n, b.g.m, k, r, variant, b.bipartite)
    estimate = inv.tau_spectral(predicted, iterated.degrees)
    if iterated.n > VERIFY_MATRIX_TREE_N:
        return
    exact = spanning_tree_count_exact(iterated)
    if estimate.integer is not None:
        c.add("tau_ground_truth", b.name, k, r, variant, estimate.integer, exact,
              "rounded spectral estimate vs Matrix-Tree")
    else:
        c.add("tau_ground_truth", b.name, k, r, f"{variant}_log", estimate.log_tau, math.log(exact),
              "above the rounding cap; compared as logs", tol_spec=(1e-6, "log"))


def _graph_rows(c: _Collector, name: str, g: Graph, corpus: CorpusSpec, printed_sign: bool) -> None:
    try:
        b = _base(name, g)
    except _ERRORS as exc:
        c.error("lemma25_sign", name, 0, 0, "base", exc)
        return
    c.guarded("lemma25_sign", name, 0, 0, ("corrected", "as_printed"), lambda: _check_sign(c, b))
    for variant, ks in (("sk", corpus.sk_ks), ("s2k", corpus.s2k_ks)):
        for k in ks:
            claim = "spectrum_sk" if variant == "sk" else "spectrum_s2k"
            c.guarded(claim, name, k, 1, ("values",),
                      lambda: _check_spectrum_one_step(c, b, variant, k))
            if variant == "sk":
                c.guarded("eigenbasis_lemma41", name, k, 1,
                          ("residual", "orthonormality", "residual_mass"),
                          lambda: _check_eigenbasis(c, b, k))
                _walk_rows(c, b, k, printed_sign)
            for r in corpus.rs:
                _iterate_rows(c, b, variant, k, r)


def _iterate_rows(c: _Collector, b: _Base, variant: str, k: int, r: int) -> None:
    inv_claims = (("kf_sk", "ke_sk", "tau_sk_published") if variant == "sk"
                  else ("kf_s2k_published", "ke_s2k_published", "tau_s2k_published"))
    try:
        iterated = iterate_transform(b.g, k, r, variant)
        observed = eigen_decompose(iterated)[0]
    except _ERRORS as exc:
        for claim in inv_claims:
            c.error(claim, b.name, k, r, "build", exc)
        return
    if r >= 2:
        c.guarded("spectrum_iterated", b.name, k, r, (variant,),
                  lambda: _check_iterated(c, b, variant, k, r, iterated, observed))
    check = _check_sk_invariants if variant == "sk" else _check_s2k_invariants
    c.guarded(inv_claims[0], b.name, k, r, ("closed",),
              lambda: check(c, b, k, r, iterated, observed))
    c.guarded("tau_ground_truth", b.name, k, r, (variant,),
              lambda: _check_tau_ground_truth(c, b, variant, k, r, iterated))


def run_verification(corpus: CorpusSpec | None = None, tol: float | None = None,
                     as_published_sign: bool = False) -> VerificationReport:
    """Evaluate every claim on every corpus graph and collect the rows.

    Parameters
    ----------
    corpus
        Graphs and parameter sets; :func:`default_corpus` when omitted.
    tol
        Replaces every per-claim default tolerance when given.
    as_published_sign
        Feed the walk closed forms with base hitting times computed from the
        printed ``+`` sign instead of the corrected one.
    """
    corpus = default_corpus() if corpus is None else corpus
    collector = _Collector(tol)
    if not corpus.is_empty:
        for name, g in corpus.graphs:
            _graph_rows(collector, name, g, corpus, as_published_sign)
    return VerificationReport(collector.rows)


def iter_claims(report: VerificationReport) -> Iterator[tuple[str, dict[str, int]]]:
    """Per-claim status counts in claim order."""
    for claim in CLAIMS:
        rows = report.select(claim=claim)
        if rows:
            counts = {status: 0 for status in STATUSES}
            for row in rows:
                counts[row.status] += 1
            yield claim, counts
