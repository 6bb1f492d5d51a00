"""Command-line interface: ``pcmtree {analyze,weights,trees,simulate,validate}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import PCMError
from .graph import count_spanning_trees, enumerate_spanning_trees, induce_graph
from .indices import analyze
from .matrix import read_matrix, validate
from .montecarlo import INDEX_NAMES, SeriesConfig, run_study, write_samples_csv, write_summary_csv
from .weights import evm_weights, gmm_weights, gmt_weights


def _fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}f}"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_analyze(args, out) -> int:
    m = read_matrix(args.matrix)
    report = analyze(m, cap=args.cap, gw_weights=args.gw_weights,
                     gci_normalization=args.gci_normalization)
    if args.json:
        out.write(json.dumps(report.as_dict(), sort_keys=False) + "\n")
        return 0
    p = args.precision
    lines = [
        f"n: {report.n}",
        f"complete: {_yes(report.complete)}",
        f"spanning trees: {report.tree_count}",
        f"MII {_fmt(report.mii, p)}",
        f"KII {_fmt(report.kii, p)}",
        f"almost consistent: {_yes(report.almost_consistent)}",
    ]
    if report.classical is not None:
        c = report.classical
        for label, value in (("CI", c.ci), ("GCI", c.gci), ("HCI", c.hci),
                             ("K", c.koczkodaj), ("GW", c.gw), ("RE", c.re)):
            lines.append(f"{label:<3} {_fmt(value, p)}")
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_weights(args, out) -> int:
    m = read_matrix(args.matrix)
    p = args.precision
    if args.method == "evm":
        res = evm_weights(m)
        out.write(f"lambda_max: {_fmt(res.lambda_max, p)}\n")
        w = res.vector
    elif args.method == "gmm":
        w = gmm_weights(m)
    else:
        w = gmt_weights(m, cap=args.cap)
    out.write("w: " + " ".join(_fmt(x, p) for x in w) + "\n")
    return 0


def cmd_trees(args, out) -> int:
    g = induce_graph(read_matrix(args.matrix))
    out.write(f"spanning trees: {count_spanning_trees(g)}\n")
    if args.list:
        for tree in enumerate_spanning_trees(g, cap=args.cap):
            out.write(",".join(f"{i + 1}-{j + 1}" for i, j in tree.edges) + "\n")
    return 0


def cmd_validate(args, out) -> int:
    report = validate(read_matrix(args.matrix, strict=False))
    out.write(f"complete: {_yes(report.complete)}\n")
    out.write(f"connected: {_yes(report.connected)}\n")
    for i, j, msg in report.violations:
        out.write(f"violation ({i + 1},{j + 1}): {msg}\n")
    out.write("valid\n" if report.ok else f"invalid: {len(report.violations)} violation(s)\n")
    return 0 if report.ok else 1


def cmd_simulate(args, out) -> int:
    cfg = SeriesConfig(
        n=args.n,
        matrices_per_series=args.per_series,
        series_count=args.series,
        seed=args.seed,
        factor_distribution=args.factor_distribution,
        workers=args.workers,
    )
    stats = run_study(cfg)
    if args.out:
        out_path = Path(args.out)
        write_samples_csv(stats, out_path)
        summary = Path(args.summary) if args.summary else out_path.with_name(out_path.stem + "_summary.csv")
        write_summary_csv(stats, summary)
    p = args.precision
    out.write("series " + " ".join(f"{name:>{p + 3}}" for name in (*INDEX_NAMES, "r_gw_mii")) + "\n")
    for st in stats:
        vals = [st.means[name] for name in INDEX_NAMES] + [st.r("gw", "mii")]
        out.write(f"{st.series_index:>6} " + " ".join(f"{v:>{p + 3}.{p}f}" for v in vals) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=5, help="decimal places in printed numbers")
    common.add_argument("--cap", type=int, default=None,
                        help="spanning-tree enumeration cap (default: $PCM_TREE_CAP or 10^7)")

    parser = argparse.ArgumentParser(
        prog="pcmtree",
        description="Spanning-tree inconsistency indices for pairwise comparison matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="MII, KII and the classical indices")
    p.add_argument("matrix", help=".pcm file, or - for stdin")
    p.add_argument("--json", action="store_true", help="print one JSON object")
    p.add_argument("--gw-weights", choices=("gmm", "evm"), default="gmm")
    p.add_argument("--gci-normalization", choices=("pairs", "simple"), default="pairs")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("weights", parents=[common], help="priority vector")
    p.add_argument("matrix")
    p.add_argument("--method", choices=("evm", "gmm", "east"), default="east")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("trees", parents=[common], help="count (and list) spanning trees")
    p.add_argument("matrix")
    p.add_argument("--list", action="store_true", help="print one tree per line")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("validate", parents=[common], help="check reciprocity and connectivity")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo study of index means")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--per-series", type=int, default=1000)
    p.add_argument("--series", type=int, default=30)
    p.add_argument("--seed", type=int, default=2019)
    p.add_argument("--out", help="per-matrix CSV path")
    p.add_argument("--summary", help="per-series CSV path (default: <out>_summary.csv)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--factor-distribution", choices=("loguniform", "uniform"), default="loguniform")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (PCMError, OSError, ValueError) as exc:
        print(f"pcmtree {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
