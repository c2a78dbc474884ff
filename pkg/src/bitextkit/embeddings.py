"""Sentence vectors from word-embedding dictionaries, vector math, and the
EMBF binary vector-file codec.

Word tables use the plain-text word-vector format (`<count> <dim>` header,
then one `word v1 .. vdim` row per line). Sentence vectors are mean-pooled
token vectors; precomputed neural sentence vectors travel in EMBF files:

    magic   4 bytes  "EMBF"
    version u16 LE   (currently 1)
    dim     u32 LE
    count   u64 LE
    records count x (pair_id u64 LE, dim x float32 LE)

pair_ids must be strictly increasing within a file. Vectors are stored as
32-bit floats; means and dot products are accumulated in 64-bit.
"""

from __future__ import annotations

import logging
import math
import struct
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadMagic,
    DimensionMismatch,
    InvalidNumber,
    MalformedHeader,
    TruncatedFile,
    UnsortedIds,
    UnsupportedVersion,
    ZeroVector,
)

logger = logging.getLogger(__name__)

EMBF_MAGIC = b"EMBF"
EMBF_VERSION = 1
_HEADER = struct.Struct("<4sHIQ")  # magic, version, dim, count


@lru_cache(maxsize=None)
def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str) -> list[str]:
    """Case-fold, split on Unicode whitespace, then peel leading/trailing
    punctuation characters off each chunk as separate tokens.

    >>> tokenize("Hello, world!")
    ['hello', ',', 'world', '!']
    """
    tokens: list[str] = []
    for chunk in text.casefold().split():
        left, right = 0, len(chunk)
        while left < right and _is_punct(chunk[left]):
            left += 1
        while right > left and _is_punct(chunk[right - 1]):
            right -= 1
        tokens.extend(chunk[:left])
        if left < right:
            tokens.append(chunk[left:right])
        tokens.extend(chunk[right:])
    return tokens


@dataclass
class WordEmbeddingTable:
    """Immutable word -> vector map backed by one float32 matrix.

    `index` maps a word to its row in `vectors`; duplicate words in the
    source file keep their first occurrence (`duplicates` counts the rest).
    """

    language: str
    dim: int
    vectors: np.ndarray
    index: dict[str, int] = field(repr=False)
    duplicates: int = 0

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def __len__(self) -> int:
        return len(self.index)

    def vector(self, word: str) -> np.ndarray | None:
        row = self.index.get(word)
        return None if row is None else self.vectors[row]


def load_word_table(path: str | Path, language: str = "") -> WordEmbeddingTable:
    """Load a text-format word-vector file.

    The dimension comes from the header, never from assumptions about the
    release. Rows with the wrong field count raise DimensionMismatch (with
    the line number); unparseable or non-finite components raise
    InvalidNumber. A header count that disagrees with the actual number of
    rows is tolerated and logged.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise MalformedHeader(f"{path}: header must be '<count> <dim>', got {header!r}")
        try:
            declared_count, dim = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedHeader(f"{path}: header must be two integers, got {header!r}") from exc
        if dim < 1 or declared_count < 0:
            raise MalformedHeader(f"{path}: nonsensical header {header!r}")

        index: dict[str, int] = {}
        rows: list[np.ndarray] = []
        duplicates = 0
        for lineno, line in enumerate(fh, start=2):
            fields = line.rstrip("\r\n ").split(" ")
            if len(fields) != dim + 1:
                raise DimensionMismatch(
                    f"{path}: line {lineno}: expected {dim + 1} fields, found {len(fields)}"
                )
            word = fields[0]
            try:
                vec = np.array(fields[1:], dtype=np.float32)
            except ValueError as exc:
                raise InvalidNumber(f"{path}: line {lineno}: {exc}") from exc
            if not np.isfinite(vec).all():
                raise InvalidNumber(f"{path}: line {lineno}: non-finite component")
            if word in index:
                duplicates += 1
                continue
            index[word] = len(rows)
            rows.append(vec)

    if declared_count != len(rows) + duplicates:
        logger.warning(
            "%s: header declares %d rows, file has %d", path, declared_count, len(rows) + duplicates
        )
    if duplicates:
        logger.info("%s: %d duplicate words (first occurrence kept)", path, duplicates)
    vectors = np.vstack(rows) if rows else np.empty((0, dim), dtype=np.float32)
    return WordEmbeddingTable(
        language=language, dim=dim, vectors=vectors, index=index, duplicates=duplicates
    )


def embed_sentence_mean(tokens: Sequence[str], table: WordEmbeddingTable) -> np.ndarray | None:
    """Componentwise mean of the in-vocabulary token vectors (float32).

    Out-of-vocabulary tokens are skipped. Returns None when no token is in
    vocabulary (the NO_COVERAGE signal: a value, not a fault). The summation
    order is canonicalized (sorted rows) so the result is exactly invariant
    under token permutation; accumulation happens in float64.
    """
    rows = sorted(table.index[t] for t in tokens if t in table.index)
    if not rows:
        return None
    mean = table.vectors[rows].astype(np.float64).mean(axis=0)
    return mean.astype(np.float32)


def cosine_similarity(u: np.ndarray | Sequence[float], v: np.ndarray | Sequence[float]) -> float:
    """Cosine of the angle between two vectors, clamped to [-1, 1].

    Computed as dot(u, v) / (||u|| * ||v||) in float64 regardless of input
    dtype. Raises DimensionMismatch for unequal shapes and ZeroVector when
    either norm is zero.
    """
    u64 = np.asarray(u, dtype=np.float64)
    v64 = np.asarray(v, dtype=np.float64)
    if u64.ndim != 1 or v64.ndim != 1 or u64.shape != v64.shape:
        raise DimensionMismatch(f"cosine over shapes {u64.shape} and {v64.shape}")
    norm_u = math.sqrt(float(np.dot(u64, u64)))
    norm_v = math.sqrt(float(np.dot(v64, v64)))
    if norm_u == 0.0 or norm_v == 0.0:
        raise ZeroVector("cosine is undefined for an all-zero vector")
    value = float(np.dot(u64, v64)) / (norm_u * norm_v)
    return min(1.0, max(-1.0, value))


def write_embedding_file(
    path: str | Path, dim: int, records: Iterable[tuple[int, np.ndarray | Sequence[float]]]
) -> None:
    """Write (pair_id, vector) records to an EMBF file.

    Records must be sorted by strictly increasing pair_id and every vector
    must have exactly `dim` finite components.
    """
    if dim < 1:
        raise DimensionMismatch(f"dim must be >= 1, got {dim}")
    body = bytearray()
    last_id = -1
    count = 0
    for pair_id, vec in records:
        if pair_id <= last_id:
            raise UnsortedIds(f"pair_id {pair_id} after {last_id}: ids must strictly increase")
        arr = np.asarray(vec, dtype="<f4")
        if arr.shape != (dim,):
            raise DimensionMismatch(f"pair_id {pair_id}: vector shape {arr.shape}, expected ({dim},)")
        if not np.isfinite(arr).all():
            raise InvalidNumber(f"pair_id {pair_id}: non-finite component")
        body += struct.pack("<Q", pair_id)
        body += arr.tobytes()
        last_id = pair_id
        count += 1
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(EMBF_MAGIC, EMBF_VERSION, dim, count))
        fh.write(bytes(body))


def load_embedding_file(path: str | Path) -> dict[int, np.ndarray]:
    """Load an EMBF file into a pair_id -> float32 vector map.

    Round trip through write_embedding_file is bit-exact. Validates magic,
    version, byte length against the header count, strictly increasing ids,
    and component finiteness.
    """
    data = Path(path).read_bytes()
    if len(data) < 4:
        raise TruncatedFile(f"{path}: {len(data)} bytes, shorter than the magic")
    if data[:4] != EMBF_MAGIC:
        raise BadMagic(f"{path}: magic {data[:4]!r}, expected {EMBF_MAGIC!r}")
    if len(data) < _HEADER.size:
        raise TruncatedFile(f"{path}: header truncated at {len(data)} bytes")
    _, version, dim, count = _HEADER.unpack_from(data)
    if version != EMBF_VERSION:
        raise UnsupportedVersion(f"{path}: version {version}, supported: {EMBF_VERSION}")
    if dim < 1:
        raise DimensionMismatch(f"{path}: header dim {dim} must be >= 1")
    record_size = 8 + 4 * dim
    expected = _HEADER.size + count * record_size
    if len(data) < expected:
        raise TruncatedFile(
            f"{path}: header promises {count} records ({expected} bytes), file has {len(data)}"
        )
    if len(data) > expected:
        raise TruncatedFile(f"{path}: {len(data) - expected} trailing bytes after {count} records")
    record_dtype = np.dtype([("pair_id", "<u8"), ("vec", "<f4", (dim,))])
    table = np.frombuffer(data, dtype=record_dtype, count=count, offset=_HEADER.size)
    ids = table["pair_id"]
    if count > 1 and not bool(np.all(ids[1:] > ids[:-1])):
        raise UnsortedIds(f"{path}: pair_ids are not strictly increasing")
    vecs = table["vec"]
    if count and not bool(np.isfinite(vecs).all()):
        raise InvalidNumber(f"{path}: non-finite vector component")
    return {int(i): np.array(v) for i, v in zip(ids, vecs)}
