"""Command-line entry point: ``specsub <subcommand> ...``.

Subcommands
-----------
gen         write a generated graph as an edge list
transform   apply ``sk`` / ``s2k`` (optionally iterated) to an edge-list graph
spectrum    predicted and/or computed normalized Laplacian spectra
metrics     hitting, resistance or commute tables, or a single pair
invariants  Kf*, Ke and tau, plus the printed closed forms when a variant is given
verify      run every claim over a corpus and emit the report

Exit codes: 0 success (verify: all rows pass), 2 verify found discrepancies,
1 usage or internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import invariants as inv
from .errors import SpecSubError
from .graph import Graph, format_edgelist, generate, is_bipartite, read_edgelist
from .spectra import eigen_decompose, predicted_spectrum_iterated, spectra_match
from .transforms import VARIANTS, iterate_transform, transform
from .verify import SIG_DIGITS, default_corpus, load_corpus, run_verification
from .walks import (
    commute_times,
    hitting_times_oracle,
    hitting_times_spectral,
    parse_sk_label,
    resistance_oracle,
    resolve_sk_ref,
    sk_commute_published,
    sk_hitting_time,
    sk_resistance,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so usage errors map to exit code 1."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _round(x: float) -> float:
    return float(f"{float(x):.{SIG_DIGITS}g}")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(path: str) -> Graph:
    return read_edgelist(path)


# -- subcommands --------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    g = generate(args.kind, *args.params)
    _emit(format_edgelist(g), args.out)
    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    if args.r < 1:
        raise UsageError("--r must be >= 1")
    before = iterate_transform(g, args.k, args.r - 1, args.variant)
    tg = transform(before, args.k, args.variant)
    _emit(format_edgelist(tg.graph), args.out)
    if args.labels:
        Path(args.labels).write_text(json.dumps(tg.labels_json()) + "\n")
    return 0


def _spec_json(spec) -> dict:
    d = spec.to_json()
    d["values"] = [_round(x) for x in d["values"]]
    d["grouped"] = [{"value": _round(g["value"]), "mult": g["mult"]} for g in d["grouped"]]
    return d


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    predict, compute = args.predict, args.compute
    if not (predict or compute):
        compute = True
    if predict and args.variant is None:
        raise UsageError("--predict needs --variant")
    out: dict = {}
    predicted = observed = None
    if predict:
        base_spec = eigen_decompose(g)[0]
        predicted = predicted_spectrum_iterated(base_spec, g.n, g.m, args.k, args.r,
                                                args.variant, is_bipartite(g)[0])
        out["predicted"] = _spec_json(predicted)
    if compute:
        target = g if args.variant is None else iterate_transform(g, args.k, args.r, args.variant)
        observed = eigen_decompose(target)[0]
        out["computed"] = _spec_json(observed)
    if predicted is not None and observed is not None:
        match = spectra_match(predicted, observed, args.tol)
        out["match"] = {"passed": match.passed, "max_abs_diff": _round(match.max_abs_diff),
                        "tol": args.tol, "reason": match.reason}
    _emit(_dump(out), args.out)
    return 0


def _matrix_text(matrix: np.ndarray, fmt: str) -> str:
    rows = [[_round(x) for x in row] for row in matrix]
    if fmt == "json":
        return json.dumps(rows) + "\n"
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_metrics(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    if args.method == "closed" and args.variant != "sk":
        raise UsageError("--method closed needs --variant sk")
    tg = None
    target = g
    if args.variant is not None:
        tg = transform(g, args.k, args.variant)
        target = tg.graph
    if args.pair is None:
        if args.method == "closed":
            raise UsageError("--method closed evaluates single pairs; pass --pair")
        _emit(_matrix_text(_metric_matrix(target, args.kind), args.format), args.out)
        return 0
    a, b = (_vertex(tg, text) for text in args.pair)
    if args.method == "closed":
        value = _closed_pair(g, tg, args.kind, a, b)
    else:
        value = float(_metric_matrix(target, args.kind)[a, b])
    _emit(_dump({"kind": args.kind, "method": args.method, "from": a, "to": b,
                 "value": _round(value)}), args.out)
    return 0


def _vertex(tg, text: str) -> int:
    if tg is not None and tg.variant == "sk":
        return parse_sk_label(text, tg)
    text = text.strip()
    if text.startswith("v:"):
        text = text[2:]
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse vertex {text!r}") from exc


def _metric_matrix(g: Graph, kind: str) -> np.ndarray:
    if kind == "hitting":
        return hitting_times_oracle(g)
    if kind == "commute":
        return commute_times(hitting_times_oracle(g))
    return resistance_oracle(g)


def _closed_pair(g: Graph, tg, kind: str, a: int, b: int) -> float:
    """Closed form on ``S_k(G)`` evaluated from quantities of ``G``."""
    ra, rb = resolve_sk_ref(tg, a), resolve_sk_ref(tg, b)
    if kind == "hitting":
        h = hitting_times_spectral(eigen_decompose(g)[1], g.m)
        return sk_hitting_time(h, g.m, tg.k, ra, rb)
    omega = resistance_oracle(g)
    if kind == "resistance":
        return sk_resistance(omega, tg.k, ra, rb)
    return sk_commute_published(2.0 * g.m * omega, g.m, tg.k, ra, rb)


def cmd_invariants(args: argparse.Namespace) -> int:
    g = _load(args.graph)
    bundle = inv.invariant_bundle(g)
    out: dict = {"graph": _bundle_json(bundle)}
    if args.variant is not None:
        k, r, n, m = args.k, args.r, g.n, g.m
        spec = eigen_decompose(g)[0]
        bip = is_bipartite(g)[0]
        iterated = iterate_transform(g, k, r, args.variant)
        out["transformed"] = _bundle_json(inv.invariant_bundle(iterated))
        if args.variant == "sk":
            published = {
                "kf_star_step": inv.kf_star_sk_iterated(bundle.kf_star, n, m, k, r),
                "kf_star_closed": inv.kf_star_sk_closed(bundle.kf_star, n, m, k, r),
                "kemeny": inv.kemeny_sk(bundle.kemeny, n, m, k, r),
                "log_tau": inv.tau_sk_published(bundle.log_tau, n, m, k, r),
            }
        else:
            published = {
                "kf_star": inv.kf_star_s2k(bundle.kf_star, n, m, k, r),
                "kemeny": inv.kemeny_s2k(bundle.kemeny, n, m, k, r),
                "log_tau": inv.tau_s2k_published(bundle.log_tau, n, m, k, r),
            }
            out["spectral"] = {
                "kf_star": _round(inv.kf_star_s2k(bundle.kf_star, n, m, k, r, "spectral", spec, bip)),
                "kemeny": _round(inv.kemeny_s2k(bundle.kemeny, n, m, k, r, "spectral", spec, bip)),
            }
        out["published"] = {key: _round(v) for key, v in published.items()}
        out["published"]["tau"] = _round(math.exp(published["log_tau"])) if published["log_tau"] < 700 else None
        out["parameters"] = {"variant": args.variant, "k": k, "r": r}
    _emit(_dump(out), args.out)
    return 0


def _bundle_json(bundle: inv.InvariantBundle) -> dict:
    d = bundle.to_json()
    for key in ("kf_star", "kemeny", "log_tau"):
        d[key] = _round(d[key])
    # Arbitrary-precision integers are written as strings to survive JSON readers.
    d["tau_exact"] = None if bundle.tau_exact is None else str(bundle.tau_exact)
    return d


def cmd_verify(args: argparse.Namespace) -> int:
    corpus = default_corpus() if args.corpus == "default" else load_corpus(args.corpus)
    report = run_verification(corpus, tol=args.tol, as_published_sign=args.as_published)
    text = report.to_jsonl() if args.format == "json" else report.to_csv()
    _emit(text, args.out)
    s = report.summary
    print(f"verify: {s['pass']} pass, {s['discrepancy']} discrepancy, {s['error']} error",
          file=sys.stderr)
    return report.exit_code()


# -- parser ------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specsub", description="Parallel subdivision graphs: spectra, walks, invariants.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("kind", choices=("path", "cycle", "complete", "complete_bipartite", "random_connected"))
    p.add_argument("params", nargs="*", help="sizes; random_connected takes n p seed")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("transform", help="apply sk or s2k")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", choices=VARIANTS, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("-o", "--out")
    p.add_argument("--labels", help="write the vertex-label sidecar JSON of the last step here")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("spectrum", help="predicted and/or computed spectra")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("--predict", action="store_true")
    p.add_argument("--compute", action="store_true")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("metrics", help="hitting, resistance or commute times")
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", choices=("hitting", "resistance", "commute"), default="hitting")
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--pair", nargs=2, metavar=("FROM", "TO"),
                   help="vertex indices, or labels v:<i> / e:<i>,b:<l> on sk graphs")
    p.add_argument("--method", choices=("oracle", "closed"), default="oracle")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("invariants", help="Kf*, Ke and tau")
    p.add_argument("--graph", required=True)
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--r", type=_positive, default=1)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="run every claim over a corpus")
    p.add_argument("--corpus", default="default", help="'default' or a corpus JSON file")
    p.add_argument("--tol", type=float, default=None, help="replace every per-claim tolerance")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--as-published", action="store_true",
                   help="use the printed '+' sign for base hitting times in the walk closed forms")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (SpecSubError, ValueError, OSError) as exc:
        print(f"specsub: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
