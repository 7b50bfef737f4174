"""Exhaustive ground truth: every subset of the frequent items, counted by scan."""

import time
from collections import Counter
from itertools import combinations

from src.counting import count_items, frequent_items
from src.dataset import resolve_min_sup
from src.pipelines.eclat import expect_variant
from src.pipelines.result import (
    ORACLE_MAX_ITEMS,
    MiningResult,
    RunMetrics,
    Variant,
    canonicalize,
    phase,
)


class OracleLimitError(ValueError):
    """Too many frequent items to enumerate every subset."""


def run_oracle(db, cfg):
    expect_variant(cfg, Variant.ORACLE)
    metrics = RunMetrics()
    start = time.perf_counter()
    min_sup_count = resolve_min_sup(cfg.min_sup, db.n_transactions)
    metrics.min_sup_count = min_sup_count
    freq = frequent_items(count_items(db), min_sup_count)
    metrics.n_frequent = len(freq)
    if len(freq) > ORACLE_MAX_ITEMS:
        raise OracleLimitError(
            f"Oracle enumerates 2^n subsets and accepts at most "
            f"{ORACLE_MAX_ITEMS} frequent items; this input has {len(freq)}"
        )

    with phase(metrics, "phase_1", cfg.variant):
        bit = {item: 1 << pos for pos, item in enumerate(freq)}
        masks = Counter(
            sum(bit[i] for i in t if i in bit) for t in db.transactions
        )
        found = []
        for size in range(1, len(freq) + 1):
            for subset in combinations(freq, size):
                want = sum(bit[i] for i in subset)
                support = sum(c for m, c in masks.items() if m & want == want)
                if support >= min_sup_count:
                    found.append((subset, support))
        itemsets = canonicalize(found)

    metrics.total = time.perf_counter() - start
    return MiningResult(itemsets, metrics)
