"""Desk-scale experiment protocols: bandwidth sweep, mixing, diversity, timing.

Each protocol emits an ExperimentTable whose metadata echoes every seed and
setting, so identical configurations reproduce identical tables (timing
columns aside).  Multi-run protocols derive per-run seeds as base + run
index: runs are independent yet reproducible.
"""

from __future__ import annotations

import math
import os
import platform
import statistics
import time
from dataclasses import dataclass, replace

import numpy as np

from .embio import EvalTriple, as_array, validate_triple
from .errors import DataError
from .kernel import KernelConfig
from .metrics import compute_report, frechet_distance
from .synth import (STREAM_BENCH, STREAM_DIVERSITY, STREAM_MIXING, SynthConfig,
                    kde_sample, sample_triangle_mixture, seeded_rng,
                    split_train_test, standard_normal)
from .tables import ExperimentTable

DIVERSITY_MODES = ("class_count", "unique_per_class")


def log_grid(low: float, high: float, points: int) -> tuple[float, ...]:
    """Strictly increasing log-spaced grid from low to high inclusive."""
    if not 0 < low < high:
        raise ValueError(f"need 0 < low < high, got {low}, {high}")
    if points < 1:
        raise ValueError(f"points must be >= 1, got {points}")
    if points == 1:
        return (float(low),)
    return tuple(np.logspace(math.log10(low), math.log10(high), points))


DEFAULT_BANDWIDTH_GRID = log_grid(1e-4, 1e2, 25)


@dataclass(frozen=True)
class SweepConfig:
    """KDE bandwidth sweep settings; defaults mirror the synthetic protocol."""

    synth: SynthConfig = SynthConfig()
    bandwidth_grid: tuple[float, ...] = DEFAULT_BANDWIDTH_GRID
    generated_per_run: int = 1000
    runs: int = 100
    kernel: KernelConfig = KernelConfig(sigma=1.0)
    alpha: float = 0.5

    def __post_init__(self):
        grid = tuple(float(b) for b in self.bandwidth_grid)
        if not grid:
            raise ValueError("bandwidth grid must be nonempty")
        if any(b <= 0 for b in grid):
            raise ValueError("bandwidths must be positive")
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise ValueError(f"bandwidth grid must be strictly increasing, got {grid}")
        object.__setattr__(self, "bandwidth_grid", grid)
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.generated_per_run < 1:
            raise ValueError(f"generated_per_run must be >= 1, "
                             f"got {self.generated_per_run}")


def synthetic_sweep(config: SweepConfig = SweepConfig()) -> ExperimentTable:
    """Mixture data, KDE models across a bandwidth grid, scores per bandwidth.

    Per run: regenerate the triangle mixture, split it, then for every grid
    bandwidth fit-and-sample a KDE on the train half and score the result
    (m_palate, plus the Frechet distance against the test half).  Rows hold
    per-bandwidth means across runs.
    """
    grid = config.bandwidth_grid
    run_seeds = [config.synth.seed + r for r in range(config.runs)]
    m_palate_sums = np.zeros(len(grid))
    frechet_sums = np.zeros(len(grid))
    sizes = None
    for run_seed in run_seeds:
        synth_cfg = replace(config.synth, seed=run_seed)
        full = sample_triangle_mixture(synth_cfg)
        train, test = split_train_test(full, synth_cfg.split_ratio, run_seed)
        for g, bandwidth in enumerate(grid):
            generated = kde_sample(train, bandwidth, config.generated_per_run,
                                   run_seed)
            triple = validate_triple(train, test, generated)
            report = compute_report(triple, config.kernel, alpha=config.alpha)
            m_palate_sums[g] += report.m_palate_score
            frechet_sums[g] += frechet_distance(test, generated)
            sizes = report.sample_sizes
    rows = tuple(
        (bandwidth, {"m_palate": m_palate_sums[g] / config.runs,
                     "frechet_distance": frechet_sums[g] / config.runs})
        for g, bandwidth in enumerate(grid))
    metadata = {
        "base_seed": config.synth.seed,
        "run_seeds": run_seeds,
        "runs": config.runs,
        "side": config.synth.side,
        "total_samples": config.synth.total_samples,
        "split_ratio": config.synth.split_ratio,
        "generated_per_run": config.generated_per_run,
        "sigma": config.kernel.sigma,
        "block_size": config.kernel.block_size,
        "alpha": config.alpha,
        "a": sizes[1] / (sizes[0] + sizes[1]),
        "sample_sizes": list(sizes),
        "kde_fitted_on": "train_half",
        "frechet_reference": "test_half",
    }
    return ExperimentTable("synthetic_sweep", "kde_bandwidth", rows, metadata)


def mixing_curve(triple: EvalTriple, fractions, config: KernelConfig,
                 alpha: float = 0.5, seed: int = 0) -> ExperimentTable:
    """Scores as generated rows are progressively replaced by train rows.

    For fraction f, round(f * k) generated rows are swapped for train rows,
    both chosen uniformly without replacement.  Selections are nested: the
    rows replaced at a smaller fraction stay replaced at every larger one,
    so the curve varies smoothly in f.
    """
    fractions = [float(f) for f in fractions]
    if any(not 0.0 <= f <= 1.0 for f in fractions):
        raise ValueError(f"fractions must lie in [0, 1], got {fractions}")
    if any(a >= b for a, b in zip(fractions, fractions[1:])):
        raise ValueError(f"fractions must be strictly increasing, got {fractions}")
    k, m = triple.k, triple.m
    rng = seeded_rng(seed, STREAM_MIXING)
    target_rows = np.argsort(rng.random(k), kind="stable")
    donor_rows = np.argsort(rng.random(m), kind="stable")
    generated = as_array(triple.generated)
    train = as_array(triple.train)
    rows = []
    for fraction in fractions:
        count = math.floor(fraction * k + 0.5)
        if count > m:
            raise DataError(f"fraction {fraction} asks for {count} train rows "
                            f"but only {m} are available")
        mixed = generated.copy()
        mixed[target_rows[:count]] = train[donor_rows[:count]]
        report = compute_report(validate_triple(triple.train, triple.test, mixed),
                                config, alpha=alpha)
        rows.append((fraction, {"palate": report.palate_score,
                                "m_palate": report.m_palate_score}))
    metadata = {
        "seed": seed,
        "sigma": config.sigma,
        "block_size": config.block_size,
        "alpha": alpha,
        "a": report.a,
        "sample_sizes": list(triple.sample_sizes),
        "replacement": "without_replacement",
        "selection": "nested_prefix",
    }
    return ExperimentTable("mixing_curve", "train_fraction", tuple(rows), metadata)


def _class_pools(values: np.ndarray, labels: np.ndarray,
                 rng: np.random.Generator):
    """Split each class into equal train-reference, test-reference, and pool thirds."""
    classes = np.unique(labels)
    per_class = [np.flatnonzero(labels == cls) for cls in classes]
    pool_size = min(len(idx) for idx in per_class) // 3
    if pool_size < 1:
        raise DataError("every class needs at least 3 rows to form "
                        "train/test/pool thirds")
    train_parts, test_parts, pools = [], [], []
    for idx in per_class:
        shuffled = idx[np.argsort(rng.random(len(idx)), kind="stable")]
        train_parts.append(values[shuffled[:pool_size]])
        test_parts.append(values[shuffled[pool_size:2 * pool_size]])
        pools.append(values[shuffled[2 * pool_size:3 * pool_size]])
    return (np.vstack(train_parts), np.vstack(test_parts), pools,
            classes, pool_size)


def diversity_curve(mode: str, data, labels, config: KernelConfig,
                    alpha: float = 0.5, seed: int = 0,
                    budget: int | None = None,
                    unique_grid=None) -> ExperimentTable:
    """Scores as generated-set diversity varies at a fixed total sample budget.

    The labeled data is split per class into train-reference, test-reference,
    and generation-pool thirds of equal size P.  'class_count' mode includes
    the pools of the first C' classes and duplicates each sample equally to
    fill the budget; 'unique_per_class' keeps every class but only N unique
    pool samples each, replicated budget / (N * C) times.  Replication
    factors are rounded to the nearest integer and recorded in metadata.
    """
    if mode not in DIVERSITY_MODES:
        raise ValueError(f"mode must be one of {DIVERSITY_MODES}, got {mode!r}")
    values = as_array(data)
    labels = np.asarray(labels).reshape(-1)
    if labels.shape[0] != values.shape[0]:
        raise DataError(f"label count {labels.shape[0]} does not match "
                        f"row count {values.shape[0]}")
    rng = seeded_rng(seed, STREAM_DIVERSITY)
    train_ref, test_ref, pools, classes, pool_size = _class_pools(
        values, labels, rng)
    class_count = len(classes)
    if budget is None:
        budget = class_count * pool_size
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")

    if mode == "class_count":
        params = list(range(1, class_count + 1))
        def build(c_included: int):
            unique_rows = np.vstack(pools[:c_included])
            return unique_rows
    else:
        if unique_grid is None:
            params = [d for d in range(1, pool_size + 1) if pool_size % d == 0]
        else:
            params = [int(n) for n in unique_grid]
            if any(not 1 <= n <= pool_size for n in params):
                raise ValueError(f"unique-sample counts must lie in "
                                 f"[1, {pool_size}], got {params}")
            if any(a >= b for a, b in zip(params, params[1:])):
                raise ValueError(f"unique-sample grid must be strictly "
                                 f"increasing, got {params}")
        def build(n_unique: int):
            return np.vstack([pool[:n_unique] for pool in pools])

    rows = []
    replications = {}
    totals = {}
    for param in params:
        unique_rows = build(param)
        replication = max(1, math.floor(budget / unique_rows.shape[0] + 0.5))
        generated = np.repeat(unique_rows, replication, axis=0)
        report = compute_report(validate_triple(train_ref, test_ref, generated),
                                config, alpha=alpha)
        rows.append((param, {"m_palate": report.m_palate_score}))
        replications[str(param)] = replication
        totals[str(param)] = int(generated.shape[0])
    metadata = {
        "mode": mode,
        "seed": seed,
        "sigma": config.sigma,
        "block_size": config.block_size,
        "alpha": alpha,
        "a": report.a,
        "classes": [int(c) for c in classes],
        "pool_size": pool_size,
        "budget": budget,
        "replication": replications,
        "generated_totals": totals,
        "reference_sizes": [int(train_ref.shape[0]), int(test_ref.shape[0])],
    }
    parameter_name = ("included_classes" if mode == "class_count"
                      else "unique_per_class")
    return ExperimentTable("diversity_curve", parameter_name, tuple(rows), metadata)


def bench_scaling(sizes, dim: int, config: KernelConfig, repeats: int = 3,
                  seed: int = 0) -> ExperimentTable:
    """Median wall-clock time of compute_report on random triples per size.

    Timings run serially; all raw measurements land in metadata alongside a
    hardware description.
    """
    sizes = [int(s) for s in sizes]
    if any(s < 2 for s in sizes):
        raise ValueError(f"sizes must be >= 2, got {sizes}")
    if any(a >= b for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly increasing, got {sizes}")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    rng = seeded_rng(seed, STREAM_BENCH)
    rows = []
    all_timings = {}
    for size in sizes:
        matrices = [standard_normal(rng, size * dim).reshape(size, dim)
                    for _ in range(3)]
        triple = validate_triple(*matrices)
        timings = []
        for _ in range(repeats):
            start = time.perf_counter()
            compute_report(triple, config)
            timings.append(time.perf_counter() - start)
        rows.append((size, {"median_seconds": statistics.median(timings)}))
        all_timings[str(size)] = timings
    metadata = {
        "seed": seed,
        "dim": dim,
        "repeats": repeats,
        "sigma": config.sigma,
        "block_size": config.block_size,
        "timings_seconds": all_timings,
        "hardware": f"{platform.platform()} / {os.cpu_count()} cpus",
    }
    return ExperimentTable("bench_scaling", "sample_size", tuple(rows), metadata)
