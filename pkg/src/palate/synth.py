"""Deterministic synthetic 2-D data: Gaussian triangle mixture, splits, KDE.

Randomness comes from the counter-based Philox bit generator keyed with
(seed, stream constant), so the same seed fed to different operations
yields independent streams and identical bits on every platform.  Gaussian
deviates are produced by the Box-Muller transform applied to Philox
uniforms rather than relying on any library-internal normal sampler; the
whole pipeline is pinned down to the draw order documented in each
function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .embio import EmbeddingMatrix, as_array
from .errors import DataError

# stream constants: one per consumer of the user-facing seed
STREAM_MIXTURE = 1
STREAM_SPLIT = 2
STREAM_KDE = 3
STREAM_MIXING = 4
STREAM_DIVERSITY = 5
STREAM_BENCH = 6

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SynthConfig:
    """Triangle-mixture generation parameters."""

    side: float = 3.0
    total_samples: int = 2000
    split_ratio: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not self.side > 0:
            raise ValueError(f"side must be positive, got {self.side}")
        if self.total_samples < 2:
            raise ValueError(f"total_samples must be >= 2, got {self.total_samples}")
        if not 0.0 < self.split_ratio < 1.0:
            raise ValueError(f"split_ratio must lie in (0, 1), got {self.split_ratio}")


def seeded_rng(seed: int, stream: int) -> np.random.Generator:
    """Philox generator keyed with (seed, stream); independent per stream."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def standard_normal(rng: np.random.Generator, count: int) -> np.ndarray:
    """Box-Muller deviates from the uniform stream, interleaved (cos, sin)."""
    pairs = (count + 1) // 2
    u1 = rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u1))  # 1 - u1 in (0, 1]: log never sees 0
    angle = (2.0 * math.pi) * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:count]


def triangle_vertices(side: float) -> np.ndarray:
    """Equilateral triangle anchored at the origin with an axis-aligned base."""
    return np.array([
        [0.0, 0.0],
        [side, 0.0],
        [side / 2.0, side * math.sqrt(3.0) / 2.0],
    ])


def sample_triangle_mixture_labeled(config: SynthConfig) -> tuple[EmbeddingMatrix, np.ndarray]:
    """Triangle-mixture sample plus the component index of each row.

    Draw order: one uniform per row selects the component (floor of 3u),
    then one Box-Muller pair per row supplies isotropic unit noise.
    """
    rng = seeded_rng(config.seed, STREAM_MIXTURE)
    n = config.total_samples
    components = np.minimum((rng.random(n) * 3.0).astype(np.int64), 2)
    noise = standard_normal(rng, 2 * n).reshape(n, 2)
    points = triangle_vertices(config.side)[components] + noise
    return EmbeddingMatrix(points), components


def sample_triangle_mixture(config: SynthConfig) -> EmbeddingMatrix:
    """2-D sample from three unit-variance Gaussians on triangle vertices."""
    matrix, _ = sample_triangle_mixture_labeled(config)
    return matrix


def split_train_test(X, ratio: float, seed: int) -> tuple[EmbeddingMatrix, EmbeddingMatrix]:
    """Uniformly random disjoint row split: round-half-up of ratio*rows to train.

    The permutation is the argsort of one uniform draw per row; train and
    test together hold exactly the input rows as a multiset.
    """
    values = as_array(X)
    rows = values.shape[0]
    if rows < 2:
        raise DataError(f"need at least 2 rows to split, got {rows}")
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"split ratio must lie in (0, 1), got {ratio}")
    n_train = math.floor(ratio * rows + 0.5)
    if n_train < 1 or n_train >= rows:
        raise DataError(f"split of {rows} rows at ratio {ratio} leaves an "
                        f"empty side ({n_train} train rows)")
    rng = seeded_rng(seed, STREAM_SPLIT)
    order = np.argsort(rng.random(rows), kind="stable")
    return (EmbeddingMatrix(values[order[:n_train]]),
            EmbeddingMatrix(values[order[n_train:]]))


def kde_sample(train, bandwidth: float, count: int, seed: int) -> EmbeddingMatrix:
    """Sample an isotropic-Gaussian KDE fitted on the train rows.

    Each output row is a uniformly chosen train row plus bandwidth-scaled
    Gaussian noise.  Draw order: count uniforms pick the rows, then
    count*cols Box-Muller deviates supply the noise.
    """
    values = as_array(train)
    if not bandwidth > 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rows, cols = values.shape
    rng = seeded_rng(seed, STREAM_KDE)
    picks = np.minimum((rng.random(count) * rows).astype(np.int64), rows - 1)
    noise = standard_normal(rng, count * cols).reshape(count, cols)
    return EmbeddingMatrix(values[picks] + bandwidth * noise)
