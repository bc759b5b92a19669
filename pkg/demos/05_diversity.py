"""Diversity protocols on labeled clusters at a fixed generation budget.

Two ways to starve a generator of diversity: drop whole classes, or keep
all classes but repeat a few unique samples.  The holistic score worsens
under both.
"""

import numpy as np

from palate import KernelConfig, diversity_curve, triangle_vertices
from palate.synth import seeded_rng, standard_normal

config = KernelConfig(sigma=1.0)

# three balanced clusters, 600 rows each, labeled by cluster
labels = np.repeat(np.arange(3), 600)
noise = standard_normal(seeded_rng(17, 99), 2 * labels.size).reshape(-1, 2)
values = triangle_vertices(3.0)[labels] + noise

print("== include 1, 2, then all 3 classes ==")
table = diversity_curve("class_count", values, labels, config, seed=17)
for count, metrics in table.rows:
    print(f"classes included: {int(count)}  m_palate: {metrics['m_palate']:.4f}")
print("replication per point:", table.metadata["replication"])

print("\n== vary unique samples per class ==")
table = diversity_curve("unique_per_class", values, labels, config, seed=17,
                        unique_grid=[2, 10, 50, 200])
for unique, metrics in table.rows:
    print(f"unique per class: {int(unique):>4}  m_palate: {metrics['m_palate']:.4f}")
print("\nmore diversity, better (lower) score, same total budget of",
      table.metadata["budget"], "rows")
