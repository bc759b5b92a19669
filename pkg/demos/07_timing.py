"""Wall-clock scaling of the full report as sample counts grow.

Kernel work grows quadratically in the sample count, but the blocked
evaluation keeps memory flat: only block_size x block_size panels ever
exist, never a full Gram matrix.
"""

from palate import KernelConfig, bench_scaling

table = bench_scaling(sizes=[250, 500, 1000, 2000], dim=64,
                      config=KernelConfig(sigma=10.0), repeats=3)

print(f"{'samples':>8} {'median seconds':>15}")
for size, metrics in table.rows:
    print(f"{int(size):>8} {metrics['median_seconds']:>15.4f}")

# compare the two largest sizes, where kernel work dominates the overheads
mid = table.rows[-2][1]["median_seconds"]
last = table.rows[-1][1]["median_seconds"]
print(f"\ndoubling from {int(table.rows[-2][0])} to {int(table.rows[-1][0])} "
      f"samples took {last / mid:.1f}x the time (quadratic kernel cost)")
print("hardware:", table.metadata["hardware"])
