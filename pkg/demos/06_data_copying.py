"""Both data-copying checks across generator regimes.

The pair-fraction indicator compares nearest-train distances of generated
vs held-out samples (above 1/2 means copying); the relative predicate
compares palate against the test fraction a.
"""

from palate import (KernelConfig, SynthConfig, compute_report,
                    data_copying_indicator, is_data_copying_relative,
                    kde_sample, sample_triangle_mixture, split_train_test,
                    validate_triple)

config = KernelConfig(sigma=1.0)
full = sample_triangle_mixture(SynthConfig(total_samples=1000, seed=29))
train, test = split_train_test(full, 0.5, 29)

regimes = {
    "copycat (replays train)": train,
    "near-copy (kde bw 0.05)": kde_sample(train, 0.05, 500, 29),
    "well-fit  (kde bw 1.0)": kde_sample(train, 1.0, 500, 29),
    "blurred   (kde bw 5.0)": kde_sample(train, 5.0, 500, 29),
}

print(f"{'regime':<26} {'indicator':>9} {'palate':>8} {'flagged':>8}")
for name, generated in regimes.items():
    triple = validate_triple(train, test, generated)
    indicator = data_copying_indicator(triple)
    report = compute_report(triple, config)
    flagged = is_data_copying_relative(report.palate_score, report.a)
    print(f"{name:<26} {indicator:>9.3f} {report.palate_score:>8.4f} "
          f"{str(flagged):>8}")

print("\nindicator > 0.5 and palate > a both single out the copying regimes")
