"""Round-trip embedding matrices through the three file formats."""

import tempfile
from pathlib import Path

import numpy as np

from palate import DataError, load_embeddings, save_embeddings

workdir = Path(tempfile.mkdtemp(prefix="palate_demo_"))
rng = np.random.default_rng(1)
matrix = rng.standard_normal((100, 16))

emb1 = workdir / "demo.emb1"
save_embeddings(matrix, emb1, "emb1")
print("emb1 file size:", emb1.stat().st_size, "bytes (24-byte header + payload)")
print("emb1 round trip bit-exact:",
      np.array_equal(load_embeddings(emb1).data, matrix))

csv = workdir / "demo.csv"
save_embeddings(matrix, csv, "csv")
print("csv round trip exact:", np.array_equal(load_embeddings(csv).data, matrix))
print("csv first line:", csv.read_text().splitlines()[0][:60], "...")

npy = workdir / "demo.npy"
np.save(npy, matrix.astype("<f4"))
loaded = load_embeddings(npy)
print("npy (float32) loaded as:", loaded.data.dtype, loaded.data.shape)

# sniffing works from magic bytes even with a misleading extension
odd = workdir / "mystery.bin"
odd.write_bytes(emb1.read_bytes())
print("sniffed mislabeled file:", load_embeddings(odd).rows, "rows")

# non-finite payloads never make it into memory
bad = workdir / "bad.csv"
bad.write_text("1.0,2.0\n3.0,nan\n")
try:
    load_embeddings(bad)
except DataError as exc:
    print("rejected:", exc)
