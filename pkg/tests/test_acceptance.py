"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria complete.  Tolerances and budgets are fixed here, not tuned at
run time.
"""

import dataclasses
import resource
import subprocess
import sys
import time

import numpy as np
import pytest

from palate import (KernelConfig, SweepConfig, SynthConfig, compute_report,
                    data_copying_indicator, frechet_distance, kde_sample,
                    mean_cross_kernel, mixing_curve, diversity_curve,
                    sample_triangle_mixture, split_train_test, synthetic_sweep,
                    triangle_vertices, validate_triple)
from palate.synth import seeded_rng, standard_normal

from conftest import naive_report_fields, rel_diff

SIGMA1 = KernelConfig(sigma=1.0)

FLOAT_FIELDS = ("kbar_test_test", "kbar_train_train", "kbar_gen_gen",
                "kbar_test_gen", "kbar_train_gen", "mmd2_test_gen",
                "mmd2_train_gen", "scale_score", "palate_score",
                "m_palate_score", "a")


def _passed(number: int, message: str, elapsed: float) -> None:
    print(f"\nACCEPTANCE {number:02d} PASS ({elapsed:.1f}s): {message}")


def test_criterion_01_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    for case in range(50):
        m, n, k = rng.integers(2, 501, size=3)
        dim = int(rng.integers(1, 65))
        sigma = float(rng.uniform(0.1, 20.0))
        train = rng.standard_normal((m, dim))
        test = rng.standard_normal((n, dim)) + rng.uniform(-1, 1, dim)
        gen = rng.standard_normal((k, dim)) * rng.uniform(0.5, 1.5)
        alpha = float(rng.uniform(0.0, 0.99))
        report = compute_report(validate_triple(train, test, gen),
                                KernelConfig(sigma=sigma), alpha=alpha)
        expected = naive_report_fields(train, test, gen, sigma, alpha)
        for field in FLOAT_FIELDS:
            assert rel_diff(getattr(report, field), expected[field]) < 1e-10, \
                f"case {case}: field {field}"
        assert report.data_copying_relative == expected["data_copying_relative"]
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _passed(1, "compute_report matches the naive double-loop oracle within "
               "1e-10 relative on 50 random triples", elapsed)


def test_criterion_02_copycat_extreme():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    train = rng.standard_normal((300, 2))
    test = rng.standard_normal((300, 2))
    copycat = compute_report(validate_triple(train, test, train.copy()), SIGMA1)
    assert copycat.palate_score >= 1.0 - 1e-6
    assert copycat.data_copying_relative
    test_copy = compute_report(validate_triple(train, test, test.copy()), SIGMA1)
    assert test_copy.palate_score <= 1e-6
    elapsed = time.perf_counter() - start
    _passed(2, "copycat generator scores palate >= 1 - 1e-6 and is flagged; "
               "test copy scores <= 1e-6", elapsed)


def test_criterion_03_bounds_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(99)
    for case in range(1000):
        m, n, k = rng.integers(2, 41, size=3)
        dim = int(rng.integers(1, 9))
        sigma = float(rng.uniform(0.3, 20.0))
        alpha = float(rng.uniform(0.0, 0.99))
        train = rng.uniform(-1.0, 1.0, (m, dim))
        test = rng.uniform(-1.0, 1.0, (n, dim))
        gen = rng.uniform(-1.0, 1.0, (k, dim))
        report = compute_report(validate_triple(train, test, gen),
                                KernelConfig(sigma=sigma), alpha=alpha)
        for name in ("kbar_test_test", "kbar_train_train", "kbar_gen_gen",
                     "kbar_test_gen", "kbar_train_gen"):
            value = getattr(report, name)
            assert 0.0 < value <= 1.0, f"case {case}: {name}={value}"
        assert report.kbar_test_test >= 1.0 / n
        assert report.kbar_train_train >= 1.0 / m
        assert report.kbar_gen_gen >= 1.0 / k
        assert report.mmd2_test_gen >= 0.0
        assert report.mmd2_train_gen >= 0.0
        for name in ("scale_score", "palate_score", "m_palate_score"):
            value = getattr(report, name)
            assert 0.0 <= value <= 1.0, f"case {case}: {name}={value}"
        assert abs(report.mmd2_test_gen
                   - (report.kbar_test_test + report.kbar_gen_gen
                      - 2.0 * report.kbar_test_gen)) <= 1e-12
        assert abs(report.m_palate_score
                   - (alpha * report.scale_score
                      + (1.0 - alpha) * report.palate_score)) <= 1e-12
        assert report.data_copying_relative == (report.palate_score > report.a)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _passed(3, "1000 randomized cases keep mmd2 >= 0, scores in [0, 1], and "
               "report identities within 1e-12", elapsed)


def test_criterion_04_block_invariance():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    a = rng.standard_normal((500, 32))
    b = rng.standard_normal((500, 32)) + 0.25
    reference = mean_cross_kernel(a, b, KernelConfig(sigma=2.0, block_size=500))
    self_reference = mean_cross_kernel(a, a, KernelConfig(sigma=2.0, block_size=500))
    for block in (1, 7, 333, 1000):
        config = KernelConfig(sigma=2.0, block_size=block)
        assert rel_diff(mean_cross_kernel(a, b, config), reference) < 1e-10
        assert rel_diff(mean_cross_kernel(a, a, config), self_reference) < 1e-10
    elapsed = time.perf_counter() - start
    _passed(4, "blocked kernel means agree within 1e-10 relative for block "
               "sizes {1, 7, 333, 1000, full}", elapsed)


def test_criterion_05_total_expectation_identity():
    start = time.perf_counter()
    rng = np.random.default_rng(55)
    for case in range(100):
        m = int(rng.integers(1, 1001))
        n = int(rng.integers(1, 1001))
        dim = int(rng.integers(1, 16))
        train = rng.standard_normal((m, dim)) * rng.uniform(0.1, 10.0)
        test = rng.standard_normal((n, dim)) * rng.uniform(0.1, 10.0)
        weights = rng.standard_normal(dim)
        offset = float(rng.standard_normal())
        g_train = np.tanh(train @ weights + offset)
        g_test = np.tanh(test @ weights + offset)
        pooled = np.concatenate([g_train, g_test]).mean()
        a = n / (m + n)
        weighted = a * g_test.mean() + (1.0 - a) * g_train.mean()
        assert rel_diff(pooled, weighted) < 1e-12, f"case {case}"
    elapsed = time.perf_counter() - start
    _passed(5, "pooled mean equals the a-weighted split means with "
               "a = n / (m + n) in 100 random cases (1e-12 relative)", elapsed)


def test_criterion_06_synthetic_sweep_u_shape():
    start = time.perf_counter()
    config = SweepConfig(synth=SynthConfig(total_samples=2000, seed=606),
                         runs=20)
    table = synthetic_sweep(config)
    assert len(table.rows) == 25
    grid = np.array(table.parameters)
    nearest_one = grid[np.argmin(np.abs(np.log10(grid)))]
    m_mid = table.value_at(nearest_one, "m_palate")
    m_low = table.value_at(grid[0], "m_palate")
    m_high = table.value_at(grid[-1], "m_palate")
    assert m_mid <= m_low - 0.005, f"{m_mid} vs low endpoint {m_low}"
    assert m_mid <= m_high - 0.005, f"{m_mid} vs high endpoint {m_high}"
    fd_low = table.value_at(grid[0], "frechet_distance")
    fd_high = table.value_at(grid[-1], "frechet_distance")
    assert fd_low <= fd_high
    elapsed = time.perf_counter() - start
    assert elapsed < 600.0
    _passed(6, f"mean m_palate dips at the bandwidth nearest 1 ({m_mid:.4f} vs "
               f"{m_low:.4f} / {m_high:.4f}) and the Frechet baseline shows no "
               f"overfitting upturn ({fd_low:.4f} <= {fd_high:.1f})", elapsed)


def test_criterion_07_mixing_curve_monotone():
    start = time.perf_counter()
    fractions = [i / 10 for i in range(11)]
    curves = []
    for seed in range(5):
        full = sample_triangle_mixture(SynthConfig(total_samples=2000, seed=700 + seed))
        train, test = split_train_test(full, 0.5, 700 + seed)
        gen = kde_sample(train, 1.0, 1000, 700 + seed)
        triple = validate_triple(train, test, gen)
        table = mixing_curve(triple, fractions, SIGMA1, seed=700 + seed)
        curves.append(table.column("palate"))
    mean_curve = np.mean(curves, axis=0)
    steps = np.diff(mean_curve)
    assert np.all(steps >= -0.01), f"steps {steps}"
    assert mean_curve[-1] >= 0.999
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _passed(7, "mean palate over 5 seeds is nondecreasing within 0.01 per "
               f"step and ends at {mean_curve[-1]:.6f} >= 0.999", elapsed)


def test_criterion_08_diversity_trends():
    start = time.perf_counter()
    class_gaps = []
    unique_gaps = []
    for seed in range(5):
        labels = np.repeat(np.arange(3), 600)
        noise = standard_normal(seeded_rng(800 + seed, 99),
                                2 * labels.size).reshape(-1, 2)
        values = triangle_vertices(3.0)[labels] + noise
        by_class = diversity_curve("class_count", values, labels, SIGMA1,
                                   seed=800 + seed)
        class_gaps.append(by_class.value_at(1.0, "m_palate")
                          - by_class.value_at(3.0, "m_palate"))
        by_unique = diversity_curve("unique_per_class", values, labels, SIGMA1,
                                    seed=800 + seed, unique_grid=[2, 200])
        unique_gaps.append(by_unique.value_at(2.0, "m_palate")
                           - by_unique.value_at(200.0, "m_palate"))
    mean_class_gap = float(np.mean(class_gaps))
    mean_unique_gap = float(np.mean(unique_gaps))
    assert mean_class_gap >= 0.002, f"class-count gap {mean_class_gap}"
    assert mean_unique_gap >= 0.002, f"unique-samples gap {mean_unique_gap}"
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _passed(8, f"m_palate improves with 3 classes vs 1 (mean gap "
               f"{mean_class_gap:.4f}) and with 200 vs 2 unique samples per "
               f"class (mean gap {mean_unique_gap:.4f})", elapsed)


def test_criterion_09_definition_one_estimator():
    start = time.perf_counter()
    full = sample_triangle_mixture(SynthConfig(total_samples=1000, seed=900))
    train, test = split_train_test(full, 0.5, 900)
    copycat = validate_triple(train, test, train)
    assert data_copying_indicator(copycat) >= 0.95
    values = []
    for seed in range(20):
        train_m = sample_triangle_mixture(SynthConfig(total_samples=500, seed=910 + seed))
        test_m = sample_triangle_mixture(SynthConfig(total_samples=500, seed=950 + seed))
        gen_m = sample_triangle_mixture(SynthConfig(total_samples=500, seed=990 + seed))
        values.append(data_copying_indicator(validate_triple(train_m, test_m, gen_m)))
    mean_value = float(np.mean(values))
    assert abs(mean_value - 0.5) <= 0.05
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _passed(9, f"copycat indicator >= 0.95; i.i.d. same-distribution mean "
               f"{mean_value:.3f} within 0.5 +/- 0.05 over 20 seeds", elapsed)


def test_criterion_10_frechet_baseline():
    start = time.perf_counter()

    def standardized(seed, mean, var, count=64):
        rng = np.random.default_rng(seed)
        x = rng.standard_normal(count)
        x = (x - x.mean()) / x.std(ddof=1)
        return (mean + np.sqrt(var) * x)[:, None]

    assert frechet_distance(standardized(1, 0.0, 1.0),
                            standardized(2, 2.0, 1.0)) == pytest.approx(4.0, abs=1e-8)
    assert frechet_distance(standardized(3, 0.0, 1.0),
                            standardized(4, 0.0, 4.0)) == pytest.approx(1.0, abs=1e-8)
    rng = np.random.default_rng(5)
    cloud = rng.standard_normal((200, 8))
    assert frechet_distance(cloud, cloud.copy()) <= 1e-8
    elapsed = time.perf_counter() - start
    _passed(10, "1-D closed forms (4.0 and 1.0) hold within 1e-8 and "
                "self-distance is <= 1e-8", elapsed)


_SCALING_SCRIPT = """
import resource, time
import numpy as np
from palate import KernelConfig, compute_report, validate_triple

rng = np.random.default_rng(11)
matrices = [rng.standard_normal((30000, 768)) for _ in range(3)]
triple = validate_triple(*matrices)
start = time.perf_counter()
report = compute_report(triple, KernelConfig(sigma=10.0, block_size=1000))
elapsed = time.perf_counter() - start
peak_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
print(f"RESULT peak_kb={peak_kb} elapsed={elapsed:.1f} "
      f"m_palate={report.m_palate_score:.6f}")
"""


def test_criterion_11_scaling_benchmark():
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", _SCALING_SCRIPT],
                          capture_output=True, text=True, timeout=900)
    assert proc.returncode == 0, proc.stderr
    line = next(l for l in proc.stdout.splitlines() if l.startswith("RESULT"))
    fields = dict(part.split("=") for part in line.split()[1:])
    peak_gb = float(fields["peak_kb"]) / (1024 * 1024)
    assert peak_gb < 2.0, f"peak memory {peak_gb:.2f} GB"
    elapsed = time.perf_counter() - start
    assert elapsed < 900.0
    _passed(11, f"30000x768 triple evaluated blockwise in {fields['elapsed']}s "
                f"at {peak_gb:.2f} GB peak (< 2 GB, no full Gram matrix)",
            elapsed)
