"""Evaluation metrics over embedding triples.

Everything here reduces to five mean-kernel terms (test/test, train/train,
gen/gen, test/gen, train/gen):

* mmd2        -- squared maximum mean discrepancy, the baseline distance
* scale       -- mmd2 normalized into [0, 1] by the two self-kernel means
* palate      -- the test-side share of the pooled discrepancy; values near
                 1 signal train-set memorization (the copycat regime)
* m_palate    -- convex combination alpha * scale + (1 - alpha) * palate
* test_fraction -- the weight a = n / (m + n) given to the test side
* data-copying predicates -- nearest-train-distance and palate-threshold text
* frechet_distance -- the Gaussian-fit Wasserstein baseline for comparison

compute_report evaluates the five kernel terms exactly once, reuses them
for every score, and packages the result.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .embio import EvalTriple, as_array
from .errors import NumericError, DataError
from .kernel import KernelConfig, mean_cross_kernel, self_kernel_mean

_MIN_DIST_BLOCK = 1000


@dataclass(frozen=True)
class MetricReport:
    """All scores from one evaluation, plus the configuration that made them."""

    kbar_test_test: float
    kbar_train_train: float
    kbar_gen_gen: float
    kbar_test_gen: float
    kbar_train_gen: float
    mmd2_test_gen: float
    mmd2_train_gen: float
    scale_score: float
    palate_score: float
    m_palate_score: float
    a: float
    alpha: float
    sigma: float
    data_copying_relative: bool
    sample_sizes: tuple[int, int, int]
    degenerate_denominator: bool

    def to_dict(self) -> dict:
        from . import __version__
        out = {
            "kbar_test_test": self.kbar_test_test,
            "kbar_train_train": self.kbar_train_train,
            "kbar_gen_gen": self.kbar_gen_gen,
            "kbar_test_gen": self.kbar_test_gen,
            "kbar_train_gen": self.kbar_train_gen,
            "mmd2_test_gen": self.mmd2_test_gen,
            "mmd2_train_gen": self.mmd2_train_gen,
            "scale_score": self.scale_score,
            "palate_score": self.palate_score,
            "m_palate_score": self.m_palate_score,
            "a": self.a,
            "alpha": self.alpha,
            "sigma": self.sigma,
            "data_copying_relative": self.data_copying_relative,
            "sample_sizes": list(self.sample_sizes),
            "degenerate_denominator": self.degenerate_denominator,
            "tool_version": __version__,
        }
        return out


# ---------------------------------------------------------------------------
# score formulas, shared so standalone calls and compute_report agree bitwise

def _mmd2_from_kbars(k_aa: float, k_bb: float, k_ab: float) -> float:
    return max(k_aa + k_bb - 2.0 * k_ab, 0.0)


def _scale_from_kbars(k_aa: float, k_bb: float, k_ab: float) -> float:
    return _mmd2_from_kbars(k_aa, k_bb, k_ab) / (k_aa + k_bb)


def _palate_from_mmd2(mmd2_test_gen: float, mmd2_train_gen: float,
                      a: float) -> tuple[float, bool]:
    numerator = a * mmd2_test_gen
    denominator = numerator + (1.0 - a) * mmd2_train_gen
    if denominator == 0.0:
        # gen duplicates both datasets; a is the no-information value.
        return a, True
    return numerator / denominator, False


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 < a < 1.0:
        raise ValueError(f"test fraction a must lie in (0, 1), got {a}")
    return a


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"weighting constant alpha must lie in [0, 1), got {alpha}")
    return alpha


# ---------------------------------------------------------------------------
# public operations

def mmd2(A, B, config: KernelConfig) -> float:
    """Squared MMD under the RBF kernel, as a V-statistic, clamped at 0."""
    k_aa = self_kernel_mean(A, config)
    k_bb = self_kernel_mean(B, config)
    k_ab = mean_cross_kernel(A, B, config)
    return _mmd2_from_kbars(k_aa, k_bb, k_ab)


def scale(A, B, config: KernelConfig) -> float:
    """mmd2(A, B) normalized into [0, 1] by the sum of self-kernel means.

    The denominator cannot vanish: each self-kernel mean is >= 1/rows.
    """
    k_aa = self_kernel_mean(A, config)
    k_bb = self_kernel_mean(B, config)
    k_ab = mean_cross_kernel(A, B, config)
    return _scale_from_kbars(k_aa, k_bb, k_ab)


def test_fraction(m: int, n: int) -> float:
    """Weight given to the test side: n / (m + n)."""
    if m < 1 or n < 1:
        raise ValueError(f"sample counts must be >= 1, got m={m}, n={n}")
    return n / (m + n)


def palate(triple: EvalTriple, config: KernelConfig, a: float | None = None) -> float:
    """Test-side share of the pooled discrepancy, in [0, 1].

    a * mmd2(test, gen) / (a * mmd2(test, gen) + (1 - a) * mmd2(train, gen)),
    with a defaulting to test_fraction(m, n).  Values near 1 indicate the
    generated set hugs the train data (memorization); near 0, the test data.
    Returns a itself in the degenerate case where both discrepancies vanish.
    """
    a = _check_a(test_fraction(triple.m, triple.n) if a is None else a)
    mmd2_test_gen = mmd2(triple.test, triple.generated, config)
    mmd2_train_gen = mmd2(triple.train, triple.generated, config)
    score, _ = _palate_from_mmd2(mmd2_test_gen, mmd2_train_gen, a)
    return score


def m_palate(triple: EvalTriple, config: KernelConfig, a: float | None = None,
             alpha: float = 0.5) -> float:
    """Holistic score alpha * scale(test, gen) + (1 - alpha) * palate.

    alpha = 0 reduces to palate exactly; the default alpha = 1/2 balances
    fidelity/diversity sensitivity against memorization sensitivity.
    """
    alpha = _check_alpha(alpha)
    scale_score = scale(triple.test, triple.generated, config)
    palate_score = palate(triple, config, a)
    return alpha * scale_score + (1.0 - alpha) * palate_score


def is_data_copying_relative(palate_score: float, a: float) -> bool:
    """Memorization flag relative to the test data: palate strictly above a."""
    for name, value in (("palate_score", palate_score), ("a", a)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return palate_score > a


def _min_sq_dist_to_train(points: np.ndarray, train: np.ndarray) -> np.ndarray:
    """Minimum squared Euclidean distance from each row to the train set."""
    sq_train = np.einsum("ij,ij->i", train, train)
    out = np.empty(points.shape[0])
    for i in range(0, points.shape[0], _MIN_DIST_BLOCK):
        blk = points[i:i + _MIN_DIST_BLOCK]
        sq_blk = np.einsum("ij,ij->i", blk, blk)
        best = np.full(blk.shape[0], np.inf)
        for j in range(0, train.shape[0], _MIN_DIST_BLOCK):
            panel = blk @ train[j:j + _MIN_DIST_BLOCK].T
            panel *= -2.0
            panel += sq_blk[:, None]
            panel += sq_train[j:j + _MIN_DIST_BLOCK][None, :]
            np.maximum(panel, 0.0, out=panel)
            np.minimum(best, panel.min(axis=1), out=best)
        out[i:i + _MIN_DIST_BLOCK] = best
    return out


def data_copying_indicator(triple: EvalTriple) -> float:
    """Fraction of (gen, test) pairs where gen sits closer to the train set.

    With d(v) = min squared Euclidean distance from v to any train row,
    returns (1/(k*n)) * sum_ij 1[d(gen_i) < d(test_j)].  Above 1/2 flags the
    generator as data-copying: its samples are systematically nearer the
    train data than real held-out samples are.
    """
    train = as_array(triple.train)
    d_gen = _min_sq_dist_to_train(as_array(triple.generated), train)
    d_test = np.sort(_min_sq_dist_to_train(as_array(triple.test), train))
    n = d_test.shape[0]
    # pairs with d_test > d_gen, counted by binary search over sorted d_test
    greater = n - np.searchsorted(d_test, d_gen, side="right")
    return float(greater.sum()) / (d_gen.shape[0] * n)


def frechet_distance(A, B) -> float:
    """Squared Wasserstein-2 distance between Gaussian fits to A and B.

    Fits mean and covariance (unbiased, divide by N-1) to each matrix and
    returns ||mu_A - mu_B||^2 + tr(S_A + S_B - 2 (S_A S_B)^(1/2)).  The
    matrix square root comes from a symmetric eigendecomposition of
    S_A^(1/2) S_B S_A^(1/2) with negative eigenvalues clamped to zero; the
    result is clamped below at 0.
    """
    a = as_array(A)
    b = as_array(B)
    if a.shape[1] != b.shape[1]:
        raise DataError(f"column counts disagree: {a.shape[1]} vs {b.shape[1]}")
    if a.shape[0] < 2 or b.shape[0] < 2:
        raise DataError("covariance fits need at least 2 rows per matrix, "
                        f"got {a.shape[0]} and {b.shape[0]}")
    mu_a = a.mean(axis=0)
    mu_b = b.mean(axis=0)
    cov_a = np.atleast_2d(np.cov(a, rowvar=False))
    cov_b = np.atleast_2d(np.cov(b, rowvar=False))
    try:
        vals_a, vecs_a = np.linalg.eigh(cov_a)
        root_a = (vecs_a * np.sqrt(np.maximum(vals_a, 0.0))) @ vecs_a.T
        inner = root_a @ cov_b @ root_a
        inner_vals = np.linalg.eigvalsh(inner)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigendecomposition failed: {exc}") from exc
    trace_root = np.sqrt(np.maximum(inner_vals, 0.0)).sum()
    diff = mu_a - mu_b
    value = diff @ diff + np.trace(cov_a) + np.trace(cov_b) - 2.0 * trace_root
    return max(float(value), 0.0)


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("PALATE_THREADS", "")
        threads = int(env) if env.isdigit() and int(env) > 0 else 1
    return max(int(threads), 1)


def compute_report(triple: EvalTriple, config: KernelConfig,
                   alpha: float = 0.5, a: float | None = None,
                   threads: int | None = None) -> MetricReport:
    """Evaluate every metric for one triple, computing each kernel term once.

    The five mean-kernel computations may run on ``threads`` workers
    (default 1, or the PALATE_THREADS environment variable); results are
    joined in a fixed order, so the report is deterministic either way.
    """
    alpha = _check_alpha(alpha)
    a = _check_a(test_fraction(triple.m, triple.n) if a is None else a)
    test, train, gen = triple.test, triple.train, triple.generated
    tasks = (
        lambda: self_kernel_mean(test, config),
        lambda: self_kernel_mean(train, config),
        lambda: self_kernel_mean(gen, config),
        lambda: mean_cross_kernel(test, gen, config),
        lambda: mean_cross_kernel(train, gen, config),
    )
    workers = _resolve_threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            k_tt, k_rr, k_gg, k_tg, k_rg = pool.map(lambda f: f(), tasks)
    else:
        k_tt, k_rr, k_gg, k_tg, k_rg = (f() for f in tasks)
    mmd2_test_gen = _mmd2_from_kbars(k_tt, k_gg, k_tg)
    mmd2_train_gen = _mmd2_from_kbars(k_rr, k_gg, k_rg)
    scale_score = _scale_from_kbars(k_tt, k_gg, k_tg)
    palate_score, degenerate = _palate_from_mmd2(mmd2_test_gen, mmd2_train_gen, a)
    m_palate_score = alpha * scale_score + (1.0 - alpha) * palate_score
    return MetricReport(
        kbar_test_test=k_tt,
        kbar_train_train=k_rr,
        kbar_gen_gen=k_gg,
        kbar_test_gen=k_tg,
        kbar_train_gen=k_rg,
        mmd2_test_gen=mmd2_test_gen,
        mmd2_train_gen=mmd2_train_gen,
        scale_score=scale_score,
        palate_score=palate_score,
        m_palate_score=m_palate_score,
        a=a,
        alpha=alpha,
        sigma=config.sigma,
        data_copying_relative=palate_score > a,
        sample_sizes=triple.sample_sizes,
        degenerate_denominator=degenerate,
    )
