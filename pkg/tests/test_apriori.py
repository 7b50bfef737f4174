"""Tests for the Apriori baseline's candidate tree, generation and counting."""

from collections import Counter

import pytest

from src.dataset import parse_horizontal
from src.pipelines import mine
from src.pipelines.apriori import CandidateTrie, count_candidates, generate_candidates


class TestCandidateTrie:
    def test_add_and_contains(self):
        trie = CandidateTrie(3)
        trie.add((1, 2, 3))
        trie.add((1, 2, 5))
        trie.add((1, 2, 3))
        assert len(trie) == 2
        assert (1, 2, 5) in trie
        assert (1, 3, 5) not in trie

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="2-itemset"):
            CandidateTrie(2).add((1, 2, 3))

    def test_count_walks_contained_candidates(self):
        trie = CandidateTrie(2)
        for c in [(1, 2), (1, 4), (2, 3), (3, 4)]:
            trie.add(c)
        counts = Counter()
        trie.count((1, 2, 3), counts)
        assert counts == {(1, 2): 1, (2, 3): 1}

    def test_count_skips_short_tails(self):
        trie = CandidateTrie(3)
        trie.add((2, 3, 4))
        counts = Counter()
        trie.count((1, 2, 3), counts)
        assert counts == {}


class TestGenerateCandidates:
    def test_join_on_common_prefix(self):
        trie = generate_candidates([(1,), (2,), (3,)])
        assert trie.k == 2
        assert all(c in trie for c in [(1, 2), (1, 3), (2, 3)])
        assert len(trie) == 3

    def test_prune_infrequent_subset(self):
        # 234 needs 34, which is not frequent
        trie = generate_candidates([(1, 2), (1, 3), (2, 3), (2, 4)])
        assert len(trie) == 1
        assert (1, 2, 3) in trie
        assert (2, 3, 4) not in trie

    def test_empty_level(self):
        assert len(generate_candidates([])) == 0


class TestCountCandidates:
    @pytest.mark.parametrize("workers", [1, 2, 5])
    def test_counts_by_scan(self, workers):
        db = parse_horizontal("1 2 3\n1 2\n1 3\n2 3\n1 2 3\n")
        trie = generate_candidates([(0,), (1,), (2,)])
        counts = count_candidates(db.transactions, trie, workers=workers)
        assert counts == {(0, 1): 3, (0, 2): 3, (1, 2): 3}


class TestRunApriori:
    def test_matches_eclat(self, lattice_db, make_config):
        apriori = mine(lattice_db, make_config("apriori", 3))
        eclat = mine(lattice_db, make_config("v1", 3))
        assert apriori.itemsets == eclat.itemsets

    def test_levelwise_phases(self, small_db, make_config):
        result = mine(small_db, make_config("apriori", 2))
        assert list(result.metrics.phases) == ["phase_1", "phase_2"]
        assert result.metrics.n_frequent == 3
