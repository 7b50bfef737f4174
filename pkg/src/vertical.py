"""Vertical (item -> tidset) database and the support total order.

Tidsets are ascending int64 numpy arrays of 1-based transaction ids; the
support of an item is the length of its tidset.
"""

from collections import defaultdict
from dataclasses import dataclass

import numpy as np
import structlog

from src.workers import run_tasks, split

log = structlog.get_logger()

TID_DTYPE = np.int64


def tidset(tids):
    return np.asarray(tids, dtype=TID_DTYPE)


@dataclass(frozen=True)
class VerticalDb:
    """(item, tidset) entries; `order_by_support` fixes the class order."""

    entries: tuple

    def __len__(self):
        return len(self.entries)

    @property
    def items(self):
        return [item for item, _ in self.entries]

    def as_dict(self):
        return dict(self.entries)


def _invert(transactions, first_tid, keep):
    tids = defaultdict(list)
    for tid, t in enumerate(transactions, start=first_tid):
        for item in t:
            if keep is None or item in keep:
                tids[item].append(tid)
    return tids


def build_vertical(db, frequent=None):
    """Invert `db`; with `frequent` given, other items are left out.

    Entries come back in ascending item order.
    """
    keep = None if frequent is None else frozenset(frequent)
    tids = _invert(db.transactions, 1, keep)
    return VerticalDb(tuple((item, tidset(tids[item])) for item in sorted(tids)))


def drop_infrequent(v, min_sup_count):
    return VerticalDb(tuple(e for e in v.entries if len(e[1]) >= min_sup_count))


def order_by_support(v):
    """Sort entries by (support, item id), both ascending."""
    return VerticalDb(tuple(sorted(v.entries, key=lambda e: (len(e[1]), e[0]))))


def merge_tid_maps(a, b):
    """Union two partial item -> tidset maps; tidsets stay sorted and unique."""
    merged = dict(a)
    for item, tids in b.items():
        merged[item] = np.union1d(merged[item], tids) if item in merged else tids
    return merged


def _partial_map(transactions, first_tid, keep):
    inverted = _invert(transactions, first_tid, keep)
    return {item: tidset(tids) for item, tids in inverted.items()}


def build_vertical_accumulated(db, frequent, workers=1, executor="thread"):
    """Build item -> tidset from worker-local partial maps.

    Tids are fixed by position before the work is split, then each worker
    inverts its own slice and the partial maps are folded with
    `merge_tid_maps`.
    """
    keep = frozenset(frequent)
    chunks = split(db.transactions, workers)
    tasks = []
    first_tid = 1
    for chunk in chunks:
        tasks.append((chunk, first_tid, keep))
        first_tid += len(chunk)
    merged = {}
    for partial in run_tasks(_partial_map, tasks, workers, executor):
        merged = merge_tid_maps(merged, partial)
    log.debug("tid_map_accumulated", items=len(merged), partials=len(tasks))
    return merged


def order_items(items, tid_map):
    """Order `items` by support read from `tid_map`, as a VerticalDb."""
    ordered = sorted(items, key=lambda item: (len(tid_map[item]), item))
    return VerticalDb(tuple((item, tid_map[item]) for item in ordered))
