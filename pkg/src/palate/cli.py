"""Command-line entry point.

Subcommands: compute (score one triple of embedding files), synthetic
(KDE bandwidth sweep on generated 2-D data), mix (train-row mixing curve),
diversity (class-count / unique-sample curves), bench (timing table), and
convert (format conversion).  Every run prints its fully resolved
configuration before any result, and every artifact written to disk embeds
that configuration.  Exit codes: 0 success, 1 usage error, 2 data error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .embio import load_embeddings, save_embeddings, validate_triple
from .errors import DataError, NumericError
from .experiments import (SweepConfig, bench_scaling, diversity_curve,
                          log_grid, mixing_curve, synthetic_sweep)
from .kernel import KernelConfig
from .metrics import compute_report, test_fraction
from .synth import SynthConfig


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 1 per this tool's contract."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _echo_config(**settings) -> None:
    print("config:", " ".join(f"{key}={value}" for key, value in settings.items()))


def _write_report(report, path: str, fmt: str) -> None:
    payload = report.to_dict()
    if fmt == "csv":
        keys = list(payload.keys())
        lines = [",".join(keys),
                 ",".join(json.dumps(payload[k]) if isinstance(payload[k], (list, bool, str))
                          else f"{payload[k]:.17g}" for k in keys)]
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _write_table(table, path: str | None, svg: str | None = None,
                 log_x: bool = False) -> None:
    if path:
        if path.endswith(".csv"):
            table.to_csv(path)
        else:
            table.to_json(path)
    if svg:
        table.to_svg(svg, log_x=log_x)


def _load_labels(path: str) -> np.ndarray:
    labels = []
    try:
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    labels.append(int(line))
                except ValueError as exc:
                    raise DataError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not labels:
        raise DataError(f"{path}: no labels found")
    return np.array(labels, dtype=np.int64)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_compute(args) -> int:
    train = load_embeddings(args.train)
    test = load_embeddings(args.test)
    gen = load_embeddings(args.gen)
    triple = validate_triple(train, test, gen)
    config = KernelConfig(sigma=args.sigma, block_size=args.block_size)
    a = args.test_fraction
    resolved_a = a if a is not None else test_fraction(triple.m, triple.n)
    _echo_config(sigma=config.sigma, alpha=args.alpha, a=resolved_a,
                 block_size=config.block_size, reduction=config.reduction,
                 threads=args.threads or os.environ.get("PALATE_THREADS", 1),
                 sizes=triple.sample_sizes, out=args.out, format=args.format)
    report = compute_report(triple, config, alpha=args.alpha, a=a,
                            threads=args.threads)
    if args.out:
        _write_report(report, args.out, args.format)
    print(f"palate={report.palate_score:.6f} m_palate={report.m_palate_score:.6f} "
          f"scale={report.scale_score:.6f} mmd2_test_gen={report.mmd2_test_gen:.6e} "
          f"mmd2_train_gen={report.mmd2_train_gen:.6e} "
          f"data_copying_relative={report.data_copying_relative}")
    return 0


def _cmd_synthetic(args) -> int:
    config = SweepConfig(
        synth=SynthConfig(side=args.side, total_samples=args.samples,
                          split_ratio=0.5, seed=args.seed),
        bandwidth_grid=log_grid(args.grid_min, args.grid_max, args.grid_points),
        generated_per_run=args.gen_count,
        runs=args.runs,
        kernel=KernelConfig(sigma=args.sigma, block_size=args.block_size),
        alpha=args.alpha,
    )
    _echo_config(side=args.side, samples=args.samples, grid_min=args.grid_min,
                 grid_max=args.grid_max, grid_points=args.grid_points,
                 gen_count=args.gen_count, runs=args.runs, seed=args.seed,
                 sigma=args.sigma, alpha=args.alpha, out=args.out, svg=args.svg)
    table = synthetic_sweep(config)
    _write_table(table, args.out, args.svg, log_x=True)
    for bandwidth, metrics in table.rows:
        print(f"kde_bandwidth={bandwidth:.6g} "
              + " ".join(f"{k}={v:.6g}" for k, v in metrics.items()))
    return 0


def _cmd_mix(args) -> int:
    train = load_embeddings(args.train)
    test = load_embeddings(args.test)
    gen = load_embeddings(args.gen)
    triple = validate_triple(train, test, gen)
    if args.steps < 2:
        raise ValueError(f"--steps must be >= 2, got {args.steps}")
    fractions = [i / (args.steps - 1) for i in range(args.steps)]
    config = KernelConfig(sigma=args.sigma, block_size=args.block_size)
    _echo_config(sigma=args.sigma, alpha=args.alpha, steps=args.steps,
                 seed=args.seed, sizes=triple.sample_sizes, out=args.out)
    table = mixing_curve(triple, fractions, config, alpha=args.alpha,
                         seed=args.seed)
    _write_table(table, args.out)
    for fraction, metrics in table.rows:
        print(f"train_fraction={fraction:.3f} "
              + " ".join(f"{k}={v:.6f}" for k, v in metrics.items()))
    return 0


def _cmd_diversity(args) -> int:
    data = load_embeddings(args.data)
    labels = _load_labels(args.labels)
    mode = {"classes": "class_count", "unique": "unique_per_class"}[args.mode]
    config = KernelConfig(sigma=args.sigma, block_size=args.block_size)
    _echo_config(mode=mode, sigma=args.sigma, alpha=args.alpha,
                 budget=args.budget, seed=args.seed, out=args.out)
    table = diversity_curve(mode, data, labels, config, alpha=args.alpha,
                            seed=args.seed, budget=args.budget)
    _write_table(table, args.out)
    for param, metrics in table.rows:
        print(f"{table.parameter_name}={param:g} "
              + " ".join(f"{k}={v:.6f}" for k, v in metrics.items()))
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    config = KernelConfig(sigma=args.sigma, block_size=args.block_size)
    _echo_config(sizes=sizes, dim=args.dim, repeats=args.repeats,
                 seed=args.seed, sigma=args.sigma,
                 block_size=args.block_size, out=args.out)
    table = bench_scaling(sizes, args.dim, config, repeats=args.repeats,
                          seed=args.seed)
    _write_table(table, args.out)
    for size, metrics in table.rows:
        print(f"sample_size={size:g} median_seconds={metrics['median_seconds']:.3f}")
    return 0


def _cmd_convert(args) -> int:
    matrix = load_embeddings(args.in_path)
    _echo_config(input=args.in_path, out=args.out, to=args.to)
    save_embeddings(matrix, args.out, format=args.to)
    print(f"wrote {matrix.rows}x{matrix.cols} matrix to {args.out} ({args.to})")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="palate",
                     description="Kernel two-sample evaluation metrics for "
                                 "generative models.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_kernel_flags(p, sigma_default):
        p.add_argument("--sigma", type=float, default=sigma_default,
                       help=f"RBF bandwidth (default {sigma_default})")
        p.add_argument("--block-size", type=int, default=1000,
                       help="rows per kernel block (default 1000)")
        p.add_argument("--threads", type=int, default=None,
                       help="kernel-term worker count (default PALATE_THREADS or 1)")

    p = sub.add_parser("compute", parents=[], help="score one (train, test, "
                       "generated) triple of embedding files")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--gen", required=True)
    add_kernel_flags(p, 10.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--test-fraction", type=float, default=None,
                   help="override a (default: n / (m + n) from file sizes)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("synthetic", help="triangle-mixture KDE bandwidth sweep")
    p.add_argument("--side", type=float, default=3.0)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--grid-min", type=float, default=1e-4)
    p.add_argument("--grid-max", type=float, default=1e2)
    p.add_argument("--grid-points", type=int, default=25)
    p.add_argument("--gen-count", type=int, default=1000)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_kernel_flags(p, 1.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--out", required=True,
                   help="table path (.csv for CSV, otherwise JSON)")
    p.add_argument("--svg", default=None, help="optional line-chart path")
    p.set_defaults(func=_cmd_synthetic)

    p = sub.add_parser("mix", help="replace generated rows with train rows "
                       "and track the scores")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--seed", type=int, default=0)
    add_kernel_flags(p, 10.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_mix)

    p = sub.add_parser("diversity", help="class-count or unique-sample curves "
                       "on labeled embeddings")
    p.add_argument("--data", required=True)
    p.add_argument("--labels", required=True,
                   help="text file, one integer class label per row")
    p.add_argument("--mode", choices=("classes", "unique"), required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    add_kernel_flags(p, 10.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_diversity)

    p = sub.add_parser("bench", help="time compute_report across sample sizes")
    p.add_argument("--sizes", required=True, help="comma-separated sizes")
    p.add_argument("--dim", type=int, default=768)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    add_kernel_flags(p, 10.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("convert", help="convert an embedding file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--to", choices=("emb1", "csv"), required=True)
    p.set_defaults(func=_cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", None):
        os.environ["PALATE_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"palate: data error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"palate: numeric failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"palate: invalid option value: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
