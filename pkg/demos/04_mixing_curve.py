"""Blend train rows into a generated set and watch the memorization score.

At 0% the generated set is untouched; at 100% it is a pure train subset
(the copycat regime) and palate saturates at 1.
"""

from palate import (KernelConfig, SynthConfig, kde_sample, mixing_curve,
                    sample_triangle_mixture, split_train_test, validate_triple)

config = KernelConfig(sigma=1.0)

full = sample_triangle_mixture(SynthConfig(total_samples=1200, seed=3))
train, test = split_train_test(full, 0.5, 3)
generated = kde_sample(train, 1.0, 600, 3)
triple = validate_triple(train, test, generated)

table = mixing_curve(triple, [i / 10 for i in range(11)], config, seed=3)

print(f"{'train fraction':>14} {'palate':>8} {'m_palate':>9}")
for fraction, metrics in table.rows:
    bar = "#" * int(40 * metrics["palate"])
    print(f"{fraction:>14.1f} {metrics['palate']:>8.4f} "
          f"{metrics['m_palate']:>9.4f}  {bar}")
