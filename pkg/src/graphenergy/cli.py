"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 unreadable or invalid graph file,
3 eigensolver non-convergence, 4 verification found violations or
characterisation mismatches.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from graphenergy.energy import (
    graph_energy,
    laplacian_energy_routes,
    weight_stats,
)
from graphenergy.errors import ConvergenceError, GraphParseError, TrialError
from graphenergy.graph import (
    WeightScheme,
    WeightedGraph,
    adjacency_matrix,
    is_bipartite,
    is_connected,
    is_omega_regular,
    laplacian,
    parse_graph,
    signless_laplacian,
)
from graphenergy.linalg import eigvalsh
from graphenergy.sweep import GRAPH_FAMILIES, MEAN_MODES, SWEEP_FAMILIES, SweepConfig, run_sweep, verify_graphs
from graphenergy.theorems import Tolerances

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SOLVER, EXIT_FAILED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """12 significant digits; negative zero prints as 0."""
    return format(float(x) + 0.0, ".12g")


def _read_graph(path: str) -> WeightedGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError("<file>", f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _apply_weight(g: WeightedGraph, spec: str) -> WeightedGraph:
    if spec == "file":
        return g
    try:
        scheme = WeightScheme.parse(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if scheme.kind == "uniform":
        raise UsageError("compute accepts --weight degree, const:C or file")
    return scheme.apply(g.n, g.edges)


def compute_record(g: WeightedGraph) -> dict:
    stats = weight_stats(g)
    le_spec, le_mat = laplacian_energy_routes(g)
    return {
        "n": g.n,
        "m": g.m,
        "weight_regime": g.regime,
        "mean_weight": stats.mean,
        "md_weight": stats.md,
        "var_weight": stats.var,
        "graph_energy": graph_energy(g),
        "laplacian_energy": le_spec,
        "laplacian_energy_matrix": le_mat,
        "bipartite": is_bipartite(g) is not None,
        "omega_regular": is_omega_regular(g),
        "connected": is_connected(g),
    }


def cmd_compute(args) -> int:
    g = _apply_weight(_read_graph(args.graph), args.weight)
    rec = compute_record(g)
    if args.format == "json":
        print(json.dumps(rec, indent=2))
    else:
        for k, v in rec.items():
            if isinstance(v, float):
                v = fmt(v)
            elif isinstance(v, bool):
                v = str(v).lower()
            print(f"{k}: {v}")
    return EXIT_OK


_MATRICES = {"adjacency": adjacency_matrix, "laplacian": laplacian, "signless": signless_laplacian}


def cmd_spectrum(args) -> int:
    g = _read_graph(args.graph)
    m = _MATRICES[args.matrix](g)
    # values at round-off level print as exact zeros
    floor = 1e-12 * (1.0 + m.frobenius())
    for lam in eigvalsh(m):
        print(fmt(0.0 if abs(lam) <= floor else lam))
    return EXIT_OK


def _sweep_config(args) -> SweepConfig:
    if args.n is None:
        raise UsageError("verify --family needs --n")
    return SweepConfig(
        family=args.family, n=args.n, n_max=args.n_max, parity=args.parity, p=args.p,
        n2=args.n2, weight=args.weight, trials=args.trials, seed=args.seed,
        abs_tol=args.abs_tol, eq_tol=args.eq_tol, connected=args.connected,
        allow_isolated=args.allow_isolated, base_family=args.base_family,
        min_components=args.min_components, max_components=args.max_components,
        mean_mode=args.mean_mode, psd_fraction=args.psd_fraction,
    )


def cmd_verify(args) -> int:
    if args.input_dir:
        paths = sorted(Path(args.input_dir).glob("*.json"))
        if not paths:
            raise UsageError(f"no *.json graph files in {args.input_dir}")
        graphs = [_read_graph(str(p)) for p in paths]
        report = verify_graphs(graphs, Tolerances(abs_tol=args.abs_tol, eq_tol=args.eq_tol),
                               source=str(args.input_dir))
    else:
        try:
            cfg = _sweep_config(args)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        report = run_sweep(cfg)
    text = report.to_csv() if args.format == "csv" else report.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    checked = sum(t.checked for t in report.tallies.values())
    status = "ok" if report.ok else "FAILED"
    print(f"verify: checks={checked} violations={report.violations} "
          f"mismatches={report.mismatches} route_failures={report.route_failures} {status}",
          file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphenergy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="energies and weight statistics of one graph")
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--weight", default="file", help="degree | const:C | file (default: file)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("spectrum", help="sorted eigenvalues of a graph matrix")
    p.add_argument("--graph", required=True)
    p.add_argument("--matrix", choices=tuple(_MATRICES), default="adjacency")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="check every bound over a generated family")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--family", choices=SWEEP_FAMILIES)
    src.add_argument("--input-dir", help="directory of graph JSON files to check")
    p.add_argument("--n", type=int, help="order (lower end of the range with --n-max)")
    p.add_argument("--n-max", type=int)
    p.add_argument("--parity", choices=("even", "odd"))
    p.add_argument("--p", type=float, help="edge probability for gnp / random_bipartite")
    p.add_argument("--n2", type=int, help="second part size for complete_bipartite")
    p.add_argument("--weight", default="degree", help="degree | const:C | uniform:LO:HI")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--abs-tol", type=float, default=1e-8)
    p.add_argument("--eq-tol", type=float, default=1e-7)
    p.add_argument("--connected", action="store_true", help="resample random graphs until connected")
    p.add_argument("--allow-isolated", action="store_true",
                   help="keep isolated vertices in degree-weighted random graphs")
    p.add_argument("--base-family", choices=GRAPH_FAMILIES, default="gnp")
    p.add_argument("--min-components", type=int, default=2)
    p.add_argument("--max-components", type=int, default=4)
    p.add_argument("--mean-mode", choices=MEAN_MODES, default="mixed")
    p.add_argument("--psd-fraction", type=float, default=0.25)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"graphenergy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphParseError as exc:
        print(f"graphenergy: invalid graph: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConvergenceError as exc:
        print(f"graphenergy: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except TrialError as exc:
        print(f"graphenergy: generation failed: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
