"""The five Eclat pipelines, assembled from the phase building blocks.

V1 mines straight from the raw transactions. V2 filters infrequent items
out of the transactions first, V3 additionally builds the vertical db from
worker-local partial maps, and V4/V5 replace V3's one-partition-per-class
layout with the hash and reverse-hash partitioners.
"""

import time

import structlog

from src.counting import (
    MatrixTooLargeError,
    build_tri_matrix,
    count_items,
    disabled_matrix,
    frequent_items,
    resolve_tri_matrix,
)
from src.dataset import filter_transactions, reduction_percent, resolve_min_sup
from src.eclat import build_equivalence_classes, mine_class
from src.partitioning import PartitionScheme, plan_partitions, workload_stats
from src.pipelines.result import (
    MiningResult,
    RunMetrics,
    Variant,
    canonicalize,
    phase,
)
from src.vertical import (
    build_vertical,
    build_vertical_accumulated,
    drop_infrequent,
    order_by_support,
    order_items,
)
from src.workers import run_tasks

log = structlog.get_logger()


def expect_variant(cfg, *variants):
    if cfg.variant not in variants:
        allowed = ", ".join(str(v) for v in variants)
        raise ValueError(f"Config variant {cfg.variant} is not one of: {allowed}")


def _tri_matrix(db, cfg, metrics):
    """The pair-count matrix for `db`, or a disabled one when it is not used."""
    dim = db.max_item + 1
    if not resolve_tri_matrix(cfg.tri_matrix_mode, dim, cfg.matrix_limit):
        return disabled_matrix(dim)
    try:
        matrix = build_tri_matrix(
            db, dim, cfg.workers, cfg.executor, limit=cfg.matrix_limit
        )
    except MatrixTooLargeError as exc:
        log.warning("tri_matrix_disabled", reason=str(exc))
        return disabled_matrix(dim)
    metrics.tri_matrix_used = True
    return matrix


def _mine_partition(classes, min_sup_count):
    found = []
    for ec in classes:
        found.extend(mine_class(ec, min_sup_count))
    return found


def _mine_classes(v, matrix, scheme, p, cfg, min_sup_count, metrics):
    """Build classes from the ordered vertical db and mine each partition."""
    classes = build_equivalence_classes(v, min_sup_count, matrix)
    plan = plan_partitions(classes, scheme, p)
    metrics.workloads = plan.workloads
    metrics.workload_ratio = workload_stats(plan).ratio
    by_rank = {ec.rank: ec for ec in classes}
    tasks = [
        ([by_rank[rank] for rank in ranks], min_sup_count)
        for ranks in plan.partitions()
    ]
    found = [((item,), len(tids)) for item, tids in v.entries]
    for part in run_tasks(_mine_partition, tasks, cfg.workers, cfg.executor):
        found.extend(part)
    return found


def run_v1(db, cfg):
    expect_variant(cfg, Variant.V1)
    metrics = RunMetrics()
    start = time.perf_counter()
    min_sup_count = resolve_min_sup(cfg.min_sup, db.n_transactions)
    metrics.min_sup_count = min_sup_count

    with phase(metrics, "phase_1", cfg.variant):
        v = order_by_support(drop_infrequent(build_vertical(db), min_sup_count))
        metrics.n_frequent = len(v)
    with phase(metrics, "phase_2", cfg.variant):
        matrix = _tri_matrix(db, cfg, metrics)
    with phase(metrics, "phase_3", cfg.variant):
        found = _mine_classes(
            v, matrix, PartitionScheme.DEFAULT, None, cfg, min_sup_count, metrics
        )
        itemsets = canonicalize(found)

    metrics.total = time.perf_counter() - start
    return MiningResult(itemsets, metrics)


def _run_filtered(db, cfg, accumulated, scheme, p):
    metrics = RunMetrics()
    start = time.perf_counter()
    min_sup_count = resolve_min_sup(cfg.min_sup, db.n_transactions)
    metrics.min_sup_count = min_sup_count

    with phase(metrics, "phase_1", cfg.variant):
        counts = count_items(db, cfg.workers, cfg.executor)
        freq = frequent_items(counts, min_sup_count)
        metrics.n_frequent = len(freq)
    with phase(metrics, "phase_2", cfg.variant):
        filtered = filter_transactions(db, freq)
        metrics.reduction_pct = reduction_percent(db, filtered)
        matrix = _tri_matrix(filtered, cfg, metrics)
    with phase(metrics, "phase_3", cfg.variant):
        if accumulated:
            tid_map = build_vertical_accumulated(
                filtered, freq, cfg.workers, cfg.executor
            )
            v = order_items(freq, tid_map)
        else:
            v = order_by_support(build_vertical(filtered, freq))
    with phase(metrics, "phase_4", cfg.variant):
        found = _mine_classes(v, matrix, scheme, p, cfg, min_sup_count, metrics)
        itemsets = canonicalize(found)

    metrics.total = time.perf_counter() - start
    return MiningResult(itemsets, metrics)


def run_v2(db, cfg):
    expect_variant(cfg, Variant.V2)
    return _run_filtered(db, cfg, False, PartitionScheme.DEFAULT, None)


def run_v3(db, cfg):
    expect_variant(cfg, Variant.V3)
    return _run_filtered(db, cfg, True, PartitionScheme.DEFAULT, None)


def run_v4(db, cfg):
    expect_variant(cfg, Variant.V4)
    return _run_filtered(db, cfg, True, PartitionScheme.HASH, cfg.p)


def run_v5(db, cfg):
    expect_variant(cfg, Variant.V5)
    return _run_filtered(db, cfg, True, PartitionScheme.REVERSE_HASH, cfg.p)
