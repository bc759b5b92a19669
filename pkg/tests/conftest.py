"""Shared fixtures and the independent naive oracles used across the suite.

The oracles deliberately avoid the library's computation path: squared
distances come from direct row differences (no norm expansion), kernel
matrices are materialized in full, and sums use plain numpy means with no
blocking.  They exist so the blocked implementation has something honest
to be checked against.
"""

from __future__ import annotations

import numpy as np
import pytest

import palate


def naive_mean_kernel(a: np.ndarray, b: np.ndarray, sigma: float) -> float:
    """Full-matrix mean RBF kernel from explicit row differences."""
    diff = a[:, None, :] - b[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    return float(np.exp(-sq / (2.0 * sigma * sigma)).mean())


def naive_mmd2(a: np.ndarray, b: np.ndarray, sigma: float) -> float:
    return (naive_mean_kernel(a, a, sigma) + naive_mean_kernel(b, b, sigma)
            - 2.0 * naive_mean_kernel(a, b, sigma))


def naive_report_fields(train: np.ndarray, test: np.ndarray, gen: np.ndarray,
                        sigma: float, alpha: float,
                        a: float | None = None) -> dict:
    """Every report field recomputed through the naive kernel path."""
    if a is None:
        a = test.shape[0] / (train.shape[0] + test.shape[0])
    k_tt = naive_mean_kernel(test, test, sigma)
    k_rr = naive_mean_kernel(train, train, sigma)
    k_gg = naive_mean_kernel(gen, gen, sigma)
    k_tg = naive_mean_kernel(test, gen, sigma)
    k_rg = naive_mean_kernel(train, gen, sigma)
    mmd2_tg = max(k_tt + k_gg - 2.0 * k_tg, 0.0)
    mmd2_rg = max(k_rr + k_gg - 2.0 * k_rg, 0.0)
    scale = mmd2_tg / (k_tt + k_gg)
    denom = a * mmd2_tg + (1.0 - a) * mmd2_rg
    pal = a if denom == 0.0 else a * mmd2_tg / denom
    return {
        "kbar_test_test": k_tt,
        "kbar_train_train": k_rr,
        "kbar_gen_gen": k_gg,
        "kbar_test_gen": k_tg,
        "kbar_train_gen": k_rg,
        "mmd2_test_gen": mmd2_tg,
        "mmd2_train_gen": mmd2_rg,
        "scale_score": scale,
        "palate_score": pal,
        "m_palate_score": alpha * scale + (1.0 - alpha) * pal,
        "a": a,
        "data_copying_relative": pal > a,
    }


def rel_diff(x: float, y: float) -> float:
    scale = max(abs(x), abs(y))
    return 0.0 if scale == 0.0 else abs(x - y) / scale


def gaussian_clouds(seed: int, count: int = 200, dim: int = 2,
                    spread: float = 2.0):
    """Three fixed-seed clouds around distinct centers: (train, test, gen)."""
    rng = np.random.default_rng(seed)
    centers = [np.zeros(dim), np.full(dim, spread), -np.full(dim, spread)]
    return tuple(rng.standard_normal((count, dim)) + c for c in centers)


@pytest.fixture
def synthetic_triple():
    """A deterministic moderate-size triple from the synthetic pipeline."""
    config = palate.SynthConfig(total_samples=600, seed=11)
    full = palate.sample_triangle_mixture(config)
    train, test = palate.split_train_test(full, 0.5, 11)
    gen = palate.kde_sample(train, 1.0, 300, 11)
    return palate.validate_triple(train, test, gen)
