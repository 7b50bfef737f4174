"""Levelwise Apriori baseline: generate, prune, count over transaction partitions.

Candidates of one level are held in a prefix tree; counting walks every
transaction down the tree, so only candidates the transaction contains are
touched.
"""

import time
from collections import Counter
from itertools import groupby

import structlog

from src.counting import count_items, frequent_items
from src.dataset import resolve_min_sup
from src.pipelines.eclat import expect_variant
from src.pipelines.result import (
    MiningResult,
    RunMetrics,
    Variant,
    canonicalize,
    phase,
)
from src.workers import run_tasks, split

log = structlog.get_logger()


class CandidateTrie:
    """Prefix tree over equal-length ascending itemsets."""

    def __init__(self, k):
        self.k = k
        self.root = {}
        self.size = 0

    def add(self, itemset):
        if len(itemset) != self.k:
            raise ValueError(f"Expected a {self.k}-itemset, got {itemset}")
        node = self.root
        for item in itemset[:-1]:
            node = node.setdefault(item, {})
        if itemset[-1] not in node:
            node[itemset[-1]] = None
            self.size += 1

    def __contains__(self, itemset):
        node = self.root
        for item in itemset[:-1]:
            node = node.get(item)
            if node is None:
                return False
        return itemset[-1] in node

    def __len__(self):
        return self.size

    def count(self, transaction, counts):
        """Add one to every candidate contained in `transaction`."""
        self._walk(self.root, transaction, 0, 1, (), counts)

    def _walk(self, node, t, start, depth, prefix, counts):
        for idx in range(start, len(t) - (self.k - depth)):
            item = t[idx]
            if item not in node:
                continue
            if depth == self.k:
                counts[(*prefix, item)] += 1
            else:
                self._walk(node[item], t, idx + 1, depth + 1, (*prefix, item), counts)


def generate_candidates(level):
    """Join k-itemsets sharing a (k-1)-prefix, then drop any candidate with
    an infrequent k-subset."""
    known = set(level)
    k = len(level[0]) + 1 if level else 0
    trie = CandidateTrie(k)
    for _, group in groupby(sorted(level), key=lambda s: s[:-1]):
        group = list(group)
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                candidate = (*a, b[-1])
                if all(
                    candidate[:d] + candidate[d + 1 :] in known for d in range(k - 2)
                ):
                    trie.add(candidate)
    return trie


def _count_chunk(transactions, trie):
    counts = Counter()
    for t in transactions:
        if len(t) >= trie.k:
            trie.count(t, counts)
    return counts


def count_candidates(transactions, trie, workers=1, executor="thread"):
    """Candidate supports, one private counter per partition merged by addition."""
    chunks = split(transactions, workers)
    counts = Counter()
    for partial in run_tasks(
        _count_chunk, [(c, trie) for c in chunks], workers, executor
    ):
        counts.update(partial)
    return counts


def run_apriori(db, cfg):
    expect_variant(cfg, Variant.APRIORI)
    metrics = RunMetrics()
    start = time.perf_counter()
    min_sup_count = resolve_min_sup(cfg.min_sup, db.n_transactions)
    metrics.min_sup_count = min_sup_count

    with phase(metrics, "phase_1", cfg.variant):
        counts = count_items(db, cfg.workers, cfg.executor)
        freq = frequent_items(counts, min_sup_count)
        metrics.n_frequent = len(freq)
        found = [((item,), counts[item]) for item in freq]
    with phase(metrics, "phase_2", cfg.variant):
        level = [(item,) for item in freq]
        while len(level) > 1:
            trie = generate_candidates(level)
            if not len(trie):
                break
            supports = count_candidates(
                db.transactions, trie, cfg.workers, cfg.executor
            )
            frequent = sorted(c for c, s in supports.items() if s >= min_sup_count)
            log.debug(
                "apriori_level",
                k=trie.k,
                candidates=len(trie),
                frequent=len(frequent),
            )
            found.extend((c, supports[c]) for c in frequent)
            level = frequent
        itemsets = canonicalize(found)

    metrics.total = time.perf_counter() - start
    return MiningResult(itemsets, metrics)
