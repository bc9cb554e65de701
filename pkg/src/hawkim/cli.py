"""Command line entry point: ``hawkim <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import fields
from pathlib import Path

from . import harness
from .community import louvain, write_partition_csv
from .graph import load_edge_list
from .stats import ResultMatrix, compare as friedman_compare

log = logging.getLogger("hawkim")

SWEEPS = {
    "fis-sweep": harness.run_fis_sweep,
    "lie-sweep": harness.run_lie_sweep,
    "prob-sweep": harness.run_prob_sweep,
    "timing": harness.run_timing,
}


def _floats(s: str) -> list[float]:
    return [float(x) for x in s.replace(",", " ").split()]


def _names(s: str) -> list[str]:
    return [x for x in s.replace(",", " ").split() if x]


# flag/config key -> (ExperimentConfig field, parser)
OPTIONS = {
    "graph": ("graphs", _names),
    "methods": ("methods", _names),
    "fractions": ("fractions", _floats),
    "p": ("p", _floats),
    "runs": ("runs", int),
    "pop": ("pop", int),
    "iters": ("iters", int),
    "scout-threshold": ("scout_threshold", float),
    "sig-threshold": ("sig_threshold", int),
    "seed": ("seed", int),
    "out": ("out", str),
    "workers": ("workers", int),
}


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SystemExit(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in OPTIONS:
            raise SystemExit(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_config(args: argparse.Namespace) -> harness.ExperimentConfig:
    raw = read_config_file(args.config) if args.config else {}
    for key in OPTIONS:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            raw[key] = val
    kw = {OPTIONS[k][0]: OPTIONS[k][1](v) for k, v in raw.items()}
    if not kw.get("graphs"):
        raise SystemExit("no --graph given")
    return harness.ExperimentConfig(**kw)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hawkim", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in (*SWEEPS, "communities"):
        sp = sub.add_parser(name)
        sp.add_argument("--config")
        for key in OPTIONS:
            sp.add_argument(f"--{key}", dest=key.replace("-", "_"))
    cp = sub.add_parser("compare", help="Friedman/Holm report from sweep CSVs or a result matrix")
    cp.add_argument("inputs", nargs="*", help="sweep CSV files")
    cp.add_argument("--matrix", help="CSV with problems as rows and methods as columns")
    cp.add_argument("--lower-is-better", action="store_true")
    cp.add_argument("--out", default="results")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command == "compare":
        return _compare(args)
    cfg = build_config(args)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.command == "communities":
        for path in cfg.graphs:
            g = load_edge_list(path)
            part = louvain(g)
            dest = out / f"{Path(path).stem}_communities.csv"
            with open(dest, "w", newline="") as fh:
                write_partition_csv(g, part, fh)
            print(f"{Path(path).stem}: n={g.node_count} m={g.edge_count} "
                  f"communities={part.count} modularity={part.modularity:.4f} -> {dest}")
        return 0
    records = SWEEPS[args.command](cfg)
    dest = out / f"{args.command}.csv"
    with open(dest, "w", newline="") as fh:
        harness.write_records(records, fh)
    print(f"{len(records)} rows -> {dest}")
    return 0


def _compare(args) -> int:
    if args.matrix:
        with open(args.matrix, newline="") as fh:
            m = ResultMatrix.read_csv(fh, higher_is_better=not args.lower_is_better)
        report = friedman_compare(m)
    else:
        if not args.inputs:
            raise SystemExit("compare needs sweep CSVs or --matrix")
        recs = []
        for path in args.inputs:
            with open(path, newline="") as fh:
                recs.extend(harness.read_records(fh))
        report = harness.compare(recs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dest = out / "compare.csv"
    with open(dest, "w", newline="") as fh:
        report.write_csv(fh)
    for meth, r in sorted(report.ranks.items(), key=lambda t: t[1]):
        print(f"{meth:>10s}  {r:.3f}")
    print(f"Friedman chi2={report.chi2:.4f} (p={report.chi2_p:.3g})  "
          f"Iman-Davenport F={report.fid:.4f} (p={report.fid_p:.3g})  control={report.control}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
