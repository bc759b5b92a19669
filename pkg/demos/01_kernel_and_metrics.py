"""Walk through the metric family on small hand-made point clouds.

Everything starts from the mean RBF kernel between two sets of rows; the
scores are all ratios of those means.
"""

import numpy as np

from palate import (KernelConfig, compute_report, m_palate, mean_cross_kernel,
                    mmd2, palate, rbf, scale, self_kernel_mean, validate_triple)

config = KernelConfig(sigma=1.0)
rng = np.random.default_rng(0)

print("== pointwise kernel ==")
print("k(x, x)              =", rbf([1.0, 2.0], [1.0, 2.0], sigma=1.0))
print("k((0,0), (1,0)), s=1 =", rbf([0, 0], [1, 0], sigma=1.0))
print("k((0,0), (3,4)), s=10=", rbf([0, 0], [3, 4], sigma=10.0))

print("\n== mean kernel statistics ==")
a = rng.standard_normal((200, 2))
b = rng.standard_normal((200, 2)) + 1.5
print("mean kernel within a:", self_kernel_mean(a, config))
print("mean kernel within b:", self_kernel_mean(b, config))
print("mean kernel across  :", mean_cross_kernel(a, b, config))

print("\n== squared MMD and its normalization ==")
print("mmd2(a, b)  =", mmd2(a, b, config))
print("scale(a, b) =", scale(a, b, config), "  (always in [0, 1])")
print("mmd2(a, shuffled a) =", mmd2(a, a[rng.permutation(200)], config))

print("\n== the memorization score ==")
# a healthy generator: fresh draws from the same distribution as train/test
train = rng.standard_normal((400, 2))
test = rng.standard_normal((400, 2))
fresh = rng.standard_normal((400, 2))
healthy = validate_triple(train, test, fresh)
print("fresh generator   palate =", round(palate(healthy, config), 4),
      " m_palate =", round(m_palate(healthy, config), 4))

# a copycat: it just replays the train rows
copycat = validate_triple(train, test, train.copy())
print("copycat generator palate =", round(palate(copycat, config), 4),
      " m_palate =", round(m_palate(copycat, config), 4))

print("\n== one-call report ==")
report = compute_report(healthy, config, alpha=0.5)
print("a (test fraction)     :", report.a)
print("data_copying_relative :", report.data_copying_relative)
print("report dict keys      :", sorted(report.to_dict().keys()))
