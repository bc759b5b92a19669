"""Kernel two-sample evaluation metrics for generative models.

The package consumes precomputed embedding matrices (rows = samples,
columns = features) and computes blocked RBF-kernel V-statistics, squared
MMD, the SCALE normalization, the PALATE memorization score and its
M_PALATE combination, data-copying predicates, and a Gaussian-fit Frechet
baseline, along with deterministic synthetic-data experiment harnesses.
"""

__version__ = "0.1.0"

from .embio import (EmbeddingMatrix, EvalTriple, as_array, as_matrix,
                    detect_format, load_embeddings, save_embeddings,
                    validate_triple)
from .errors import DataError, NumericError, PalateError
from .experiments import (DEFAULT_BANDWIDTH_GRID, SweepConfig, bench_scaling,
                          diversity_curve, log_grid, mixing_curve,
                          synthetic_sweep)
from .kernel import KernelConfig, mean_cross_kernel, rbf, self_kernel_mean
from .metrics import (MetricReport, compute_report, data_copying_indicator,
                      frechet_distance, is_data_copying_relative, m_palate,
                      mmd2, palate, scale, test_fraction)
from .synth import (SynthConfig, kde_sample, sample_triangle_mixture,
                    sample_triangle_mixture_labeled, seeded_rng,
                    split_train_test, standard_normal, triangle_vertices)
from .tables import ExperimentTable

__all__ = [
    "DEFAULT_BANDWIDTH_GRID",
    "DataError",
    "EmbeddingMatrix",
    "EvalTriple",
    "ExperimentTable",
    "KernelConfig",
    "MetricReport",
    "NumericError",
    "PalateError",
    "SweepConfig",
    "SynthConfig",
    "__version__",
    "as_array",
    "as_matrix",
    "bench_scaling",
    "compute_report",
    "data_copying_indicator",
    "detect_format",
    "diversity_curve",
    "frechet_distance",
    "is_data_copying_relative",
    "kde_sample",
    "load_embeddings",
    "log_grid",
    "m_palate",
    "mean_cross_kernel",
    "mixing_curve",
    "mmd2",
    "palate",
    "rbf",
    "sample_triangle_mixture",
    "sample_triangle_mixture_labeled",
    "save_embeddings",
    "scale",
    "seeded_rng",
    "self_kernel_mean",
    "split_train_test",
    "standard_normal",
    "synthetic_sweep",
    "test_fraction",
    "triangle_vertices",
    "validate_triple",
]
