"""Frequent 1-item counting and the triangular 2-itemset support matrix."""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain

import numpy as np
import structlog

from src.config import MATRIX_LIMIT_BYTES
from src.workers import run_tasks, split

log = structlog.get_logger()

TRI_MATRIX_MODES = ("on", "off", "auto")

# Pair indices buffered before each bincount flush
_FLUSH_AT = 1 << 20


class MatrixTooLargeError(MemoryError):
    """The matrix would exceed the memory guard; run without it."""


def _count_chunk(transactions):
    return Counter(chain.from_iterable(transactions))


def count_items(db, workers=1, executor="thread"):
    """Support count of every item, merged from per-partition counters."""
    chunks = split(db.transactions, workers)
    counts = Counter()
    for partial in run_tasks(_count_chunk, [(c,) for c in chunks], workers, executor):
        counts.update(partial)
    return counts


def frequent_items(counts, min_sup_count):
    """Items with count >= min_sup_count, ascending by id."""
    return sorted(item for item, count in counts.items() if count >= min_sup_count)


@dataclass(frozen=True)
class TriangularMatrix:
    """Upper-triangular counters: cell(i, j), i < j, holds the support of {i, j}.

    Cells live in one flat array at i*dim - i*(i+1)/2 + (j - i - 1).
    """

    dim: int
    cells: np.ndarray
    enabled: bool = True

    def index(self, i, j):
        return i * self.dim - i * (i + 1) // 2 + (j - i - 1)

    def support(self, i, j):
        return pair_support(self, i, j)


def matrix_nbytes(dim):
    return max(dim * (dim - 1) // 2, 0) * np.dtype(np.int64).itemsize


def resolve_tri_matrix(mode, dim, limit=MATRIX_LIMIT_BYTES):
    """Decide whether to build the matrix; `auto` declines oversized ones."""
    if mode not in TRI_MATRIX_MODES:
        raise ValueError(f"tri-matrix mode must be one of {TRI_MATRIX_MODES}")
    if mode == "auto":
        return matrix_nbytes(dim) <= limit
    return mode == "on"


def disabled_matrix(dim):
    return TriangularMatrix(dim, np.zeros(0, dtype=np.int64), enabled=False)


@lru_cache(maxsize=256)
def _pair_positions(width):
    return np.triu_indices(width, k=1)


def _partial_matrix(transactions, dim):
    size = dim * (dim - 1) // 2
    cells = np.zeros(size, dtype=np.int64)
    pending = []
    buffered = 0
    for t in transactions:
        if len(t) < 2:
            continue
        items = np.asarray(t, dtype=np.int64)
        rows, cols = _pair_positions(len(t))
        i, j = items[rows], items[cols]
        pending.append(i * dim - i * (i + 1) // 2 + (j - i - 1))
        buffered += len(i)
        if buffered >= _FLUSH_AT:
            cells += np.bincount(np.concatenate(pending), minlength=size)
            pending, buffered = [], 0
    if pending:
        cells += np.bincount(np.concatenate(pending), minlength=size)
    return cells


def build_tri_matrix(db, dim, workers=1, executor="thread", limit=MATRIX_LIMIT_BYTES):
    """Count every co-occurring pair, one private partial matrix per worker.

    Partials are merged by elementwise addition, so the result does not
    depend on the worker count.
    """
    nbytes = matrix_nbytes(dim)
    if nbytes > limit:
        raise MatrixTooLargeError(
            f"Triangular matrix for {dim} items needs {nbytes} bytes (limit {limit})"
        )
    if any(i >= dim for t in db.transactions for i in t[-1:]):
        raise ValueError(f"Transaction item outside matrix dimension {dim}")
    cells = np.zeros(dim * (dim - 1) // 2 if dim > 1 else 0, dtype=np.int64)
    chunks = split(db.transactions, workers)
    partials = run_tasks(
        _partial_matrix, [(c, dim) for c in chunks], workers, executor
    )
    for partial in partials:
        cells += partial
    log.debug("tri_matrix_built", dim=dim, cells=len(cells), partials=len(partials))
    return TriangularMatrix(dim, cells)


def pair_support(m, i, j):
    """Support of {i, j}, symmetric in its arguments."""
    if not m.enabled:
        raise ValueError("Triangular matrix is disabled")
    if i == j:
        raise ValueError(f"pair_support needs two distinct items, got {i} twice")
    if not (0 <= i < m.dim and 0 <= j < m.dim):
        raise ValueError(f"Item id out of range for matrix of dimension {m.dim}")
    if i > j:
        i, j = j, i
    return int(m.cells[m.index(i, j)])
