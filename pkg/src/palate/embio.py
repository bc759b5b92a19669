"""Embedding matrix containers and file I/O.

Three interchange formats are supported:

* ``emb1`` -- the canonical binary format: magic ``EMB1``, a u8 dtype code
  (0 = f32, 1 = f64), 3 reserved zero bytes, u64 rows, u64 cols, then the
  payload row-major in the declared dtype.  Everything little-endian.
* ``npy`` -- read-only compatibility with NumPy's NPY version 1.0 format,
  restricted to 2-D little-endian float arrays (``<f4`` or ``<f8``),
  C order.
* ``csv`` -- one row per line, comma-separated decimal floats, no header.
  Written with 17 significant digits, so float64 values round-trip exactly.

All loaded values are widened to float64; kernel statistics downstream sum
on the order of 1e8 terms and need the extra digits.
"""

from __future__ import annotations

import ast
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError

_EMB1_MAGIC = b"EMB1"
_EMB1_DTYPES = {0: np.dtype("<f4"), 1: np.dtype("<f8")}
_NPY_MAGIC = b"\x93NUMPY"


@dataclass(frozen=True, eq=False)
class EmbeddingMatrix:
    """A validated 2-D matrix of embeddings: rows are samples, columns features.

    The payload is coerced to a C-contiguous, read-only float64 array.
    Construction rejects empty shapes and any non-finite entry.
    """

    data: np.ndarray
    origin: str | None = None

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise DataError(f"embedding matrix must be 2-D, got {arr.ndim}-D"
                            + self._origin_suffix())
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataError(f"embedding matrix must have at least 1 row and "
                            f"1 column, got shape {arr.shape}" + self._origin_suffix())
        bad = ~np.isfinite(arr)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise DataError(f"non-finite value {float(arr[r, c])} at row {r}, "
                            f"col {c}" + self._origin_suffix())
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    def _origin_suffix(self) -> str:
        return f" (from {self.origin})" if self.origin else ""

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddingMatrix):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.data.shape, self.data.tobytes()))


def as_matrix(value, origin: str | None = None) -> EmbeddingMatrix:
    """Coerce an array-like (or pass through an EmbeddingMatrix) with validation."""
    if isinstance(value, EmbeddingMatrix):
        return value
    return EmbeddingMatrix(np.asarray(value, dtype=np.float64), origin=origin)


def as_array(value) -> np.ndarray:
    """Return the validated float64 payload of a matrix or array-like."""
    return as_matrix(value).data


@dataclass(frozen=True)
class EvalTriple:
    """The (train, test, generated) bundle every metric consumes.

    All three matrices share one feature dimension; sizes are denoted
    (m, n, k) for train, test, and generated respectively.
    """

    train: EmbeddingMatrix
    test: EmbeddingMatrix
    generated: EmbeddingMatrix

    @property
    def m(self) -> int:
        return self.train.rows

    @property
    def n(self) -> int:
        return self.test.rows

    @property
    def k(self) -> int:
        return self.generated.rows

    @property
    def sample_sizes(self) -> tuple[int, int, int]:
        return (self.m, self.n, self.k)


def validate_triple(train, test, generated) -> EvalTriple:
    """Bundle three matrices after checking they share a feature dimension.

    Raises DataError listing all three column counts on mismatch.  Column
    agreement is enforced here, once, so downstream metrics never have to.
    """
    train = as_matrix(train)
    test = as_matrix(test)
    generated = as_matrix(generated)
    widths = (train.cols, test.cols, generated.cols)
    if len(set(widths)) != 1:
        raise DataError(
            "column counts disagree: train has {} cols, test has {} cols, "
            "generated has {} cols".format(*widths))
    return EvalTriple(train=train, test=test, generated=generated)


# ---------------------------------------------------------------------------
# format detection

def detect_format(path) -> str:
    """Sniff 'emb1' / 'npy' / 'csv' from magic bytes, then file extension."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            head = fh.read(6)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if head.startswith(_EMB1_MAGIC):
        return "emb1"
    if head.startswith(_NPY_MAGIC):
        return "npy"
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix in (".emb", ".emb1"):
        return "emb1"
    if suffix == ".npy":
        return "npy"
    raise DataError(f"cannot determine format of {path}: no known magic bytes "
                    f"and unrecognized extension {suffix!r}")


# ---------------------------------------------------------------------------
# loading

def load_embeddings(path, format_hint: str | None = None) -> EmbeddingMatrix:
    """Load an embedding matrix, widening stored values to float64.

    ``format_hint`` may be 'emb1', 'npy', or 'csv'; when absent the format
    is sniffed from magic bytes / extension.
    """
    path = Path(path)
    fmt = format_hint if format_hint is not None else detect_format(path)
    if fmt == "emb1":
        return _load_emb1(path)
    if fmt == "npy":
        return _load_npy(path)
    if fmt == "csv":
        return _load_csv(path)
    raise DataError(f"unknown format {fmt!r} (expected 'emb1', 'npy', or 'csv')")


def _read_exact(fh, count: int, what: str, path) -> bytes:
    buf = fh.read(count)
    if len(buf) != count:
        raise DataError(f"{path}: truncated file while reading {what} "
                        f"(wanted {count} bytes, got {len(buf)})")
    return buf


def _load_emb1(path) -> EmbeddingMatrix:
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        magic = _read_exact(fh, 4, "magic", path)
        if magic != _EMB1_MAGIC:
            raise DataError(f"{path}: bad magic {magic!r}, not an EMB1 file")
        code, = _read_exact(fh, 1, "dtype code", path)
        if code not in _EMB1_DTYPES:
            raise DataError(f"{path}: unknown EMB1 dtype code {code}")
        reserved = _read_exact(fh, 3, "reserved bytes", path)
        if reserved != b"\x00\x00\x00":
            raise DataError(f"{path}: reserved header bytes must be zero, "
                            f"got {reserved!r}")
        rows, cols = struct.unpack("<QQ", _read_exact(fh, 16, "shape", path))
        dtype = _EMB1_DTYPES[code]
        expected = rows * cols * dtype.itemsize
        payload = fh.read()
    if len(payload) != expected:
        raise DataError(f"{path}: header declares {rows}x{cols} "
                        f"({expected} payload bytes) but file holds "
                        f"{len(payload)} bytes")
    values = np.frombuffer(payload, dtype=dtype).reshape(rows, cols)
    return EmbeddingMatrix(values.astype(np.float64), origin=str(path))


def _load_npy(path) -> EmbeddingMatrix:
    try:
        fh = open(path, "rb")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        magic = _read_exact(fh, 6, "magic", path)
        if magic != _NPY_MAGIC:
            raise DataError(f"{path}: bad magic {magic!r}, not an NPY file")
        major, minor = _read_exact(fh, 2, "version", path)
        if (major, minor) != (1, 0):
            raise DataError(f"{path}: NPY version {major}.{minor} not "
                            f"supported, only 1.0")
        header_len, = struct.unpack("<H", _read_exact(fh, 2, "header length", path))
        header_text = _read_exact(fh, header_len, "header", path).decode("latin1")
        try:
            header = ast.literal_eval(header_text.strip())
        except (ValueError, SyntaxError) as exc:
            raise DataError(f"{path}: unparseable NPY header: {exc}") from exc
        descr = header.get("descr")
        if descr not in ("<f4", "<f8"):
            raise DataError(f"{path}: NPY dtype {descr!r} not supported, "
                            f"need little-endian float ('<f4' or '<f8')")
        if header.get("fortran_order"):
            raise DataError(f"{path}: Fortran-ordered NPY arrays are not supported")
        shape = header.get("shape")
        if not (isinstance(shape, tuple) and len(shape) == 2):
            raise DataError(f"{path}: NPY array must be 2-D, header shape is {shape!r}")
        rows, cols = shape
        dtype = np.dtype(descr)
        expected = rows * cols * dtype.itemsize
        payload = fh.read()
    if len(payload) != expected:
        raise DataError(f"{path}: NPY header declares shape {shape} "
                        f"({expected} payload bytes) but file holds "
                        f"{len(payload)} bytes")
    values = np.frombuffer(payload, dtype=dtype).reshape(rows, cols)
    return EmbeddingMatrix(values.astype(np.float64), origin=str(path))


def _load_csv(path) -> EmbeddingMatrix:
    rows: list[list[float]] = []
    try:
        fh = open(path, "r", encoding="ascii")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(cell) for cell in line.split(",")])
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
    if not rows:
        raise DataError(f"{path}: empty CSV file")
    width = len(rows[0])
    for lineno, row in enumerate(rows, start=1):
        if len(row) != width:
            raise DataError(f"{path}:{lineno}: row has {len(row)} values, "
                            f"expected {width}")
    return EmbeddingMatrix(np.array(rows, dtype=np.float64), origin=str(path))


# ---------------------------------------------------------------------------
# saving

def save_embeddings(matrix, path, format: str = "emb1") -> None:
    """Write a matrix to disk as 'emb1' (bit-exact) or 'csv' (value-exact)."""
    matrix = as_matrix(matrix)
    path = Path(path)
    if format == "emb1":
        _save_emb1(matrix, path)
    elif format == "csv":
        _save_csv(matrix, path)
    else:
        raise DataError(f"unsupported save format {format!r} "
                        f"(expected 'emb1' or 'csv')")


def _save_emb1(matrix: EmbeddingMatrix, path: Path) -> None:
    header = _EMB1_MAGIC + bytes([1]) + b"\x00\x00\x00"
    header += struct.pack("<QQ", matrix.rows, matrix.cols)
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(np.ascontiguousarray(matrix.data, dtype="<f8").tobytes())
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc


def _save_csv(matrix: EmbeddingMatrix, path: Path) -> None:
    # 17 significant digits: enough for exact float64 round-trip.
    try:
        with open(path, "w", encoding="ascii") as fh:
            for row in matrix.data:
                fh.write(",".join(f"{v:.17g}" for v in row))
                fh.write("\n")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc
