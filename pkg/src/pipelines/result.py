"""Run configuration, canonical results and the SPMF-style itemset writer."""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path

import structlog

from src.config import (
    DEFAULT_EXECUTOR,
    DEFAULT_PARTITIONS,
    DEFAULT_WORKERS,
    MATRIX_LIMIT_BYTES,
)
from src.counting import TRI_MATRIX_MODES
from src.dataset import SupportThreshold
from src.workers import EXECUTORS

log = structlog.get_logger()

ORACLE_MAX_ITEMS = 24


class Variant(StrEnum):
    V1 = "v1"
    V2 = "v2"
    V3 = "v3"
    V4 = "v4"
    V5 = "v5"
    APRIORI = "apriori"
    ORACLE = "oracle"


@dataclass(frozen=True)
class MiningConfig:
    variant: Variant
    min_sup: SupportThreshold
    tri_matrix_mode: str = "on"
    p: int = DEFAULT_PARTITIONS
    workers: int = DEFAULT_WORKERS
    executor: str = DEFAULT_EXECUTOR
    matrix_limit: int = MATRIX_LIMIT_BYTES

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not isinstance(self.min_sup, SupportThreshold):
            object.__setattr__(self, "min_sup", SupportThreshold(self.min_sup))
        if isinstance(self.tri_matrix_mode, bool):
            mode = "on" if self.tri_matrix_mode else "off"
            object.__setattr__(self, "tri_matrix_mode", mode)
        if self.tri_matrix_mode not in TRI_MATRIX_MODES:
            raise ValueError(f"tri_matrix_mode must be one of {TRI_MATRIX_MODES}")
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.executor not in EXECUTORS:
            raise ValueError(f"Unknown executor {self.executor!r}")


@dataclass
class RunMetrics:
    phases: dict = field(default_factory=dict)
    total: float = 0.0
    min_sup_count: int = 0
    n_frequent: int = 0
    workloads: tuple = ()
    workload_ratio: float | None = None
    reduction_pct: float | None = None
    tri_matrix_used: bool = False


@dataclass(frozen=True)
class MiningResult:
    """Canonical (itemset, support) pairs, sorted by (length, items)."""

    itemsets: list
    metrics: RunMetrics

    def __len__(self):
        return len(self.itemsets)

    def as_dict(self):
        return dict(self.itemsets)

    def summary(self):
        m = self.metrics
        parts = [f"itemsets={len(self.itemsets)}", f"min_sup_count={m.min_sup_count}"]
        parts += [f"{name}={secs:.3f}s" for name, secs in m.phases.items()]
        parts.append(f"total={m.total:.3f}s")
        if m.workload_ratio is not None:
            parts.append(f"workload_ratio={m.workload_ratio:.3f}")
        if m.reduction_pct is not None:
            parts.append(f"reduction={m.reduction_pct:.2f}%")
        return " ".join(parts)


def canonicalize(itemsets):
    """Sort by (length, items); a repeated itemset is an error."""
    ordered = sorted(
        ((tuple(items), support) for items, support in itemsets),
        key=lambda pair: (len(pair[0]), pair[0]),
    )
    for prev, cur in zip(ordered, ordered[1:], strict=False):
        if prev[0] == cur[0]:
            raise ValueError(f"Itemset {cur[0]} emitted more than once")
    return ordered


@contextmanager
def phase(metrics, name, variant):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    metrics.phases[name] = elapsed
    log.info("phase_complete", variant=str(variant), phase=name, seconds=elapsed)


def _format_line(items, support, item_names):
    return " ".join(item_names[i] for i in items) + f" #SUP: {support}\n"


def write_itemsets(result, item_names, path):
    """One itemset per line: original tokens then ' #SUP: <count>'."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as f:
        for items, support in result.itemsets:
            f.write(_format_line(items, support, item_names))
    log.info("itemsets_written", path=str(path), count=len(result.itemsets))


def write_frequent_items(result, item_names, path):
    path = Path(path)
    singles = [(items, s) for items, s in result.itemsets if len(items) == 1]
    with open(path, "w", encoding="utf-8") as f:
        for items, support in singles:
            f.write(_format_line(items, support, item_names))
    log.info("frequent_items_written", path=str(path), count=len(singles))
