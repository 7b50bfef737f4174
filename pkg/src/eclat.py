"""Equivalence classes over 1-item prefixes and the bottom-up Eclat search."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Atom:
    """An itemset with its tidset.

    `itemset` lists items in extension order (class prefix first); use
    `items` for the ascending form.
    """

    itemset: tuple
    tidset: np.ndarray

    @property
    def support(self):
        return len(self.tidset)

    @property
    def items(self):
        return tuple(sorted(self.itemset))


@dataclass(frozen=True)
class EquivalenceClass:
    """Members share `prefix`; `rank` is the prefix's position in the order."""

    prefix: int
    rank: int
    members: tuple

    def __len__(self):
        return len(self.members)


def intersect(a, b):
    return np.intersect1d(a, b, assume_unique=True)


def build_equivalence_classes(v, min_sup_count, matrix=None):
    """One class per entry of the ordered vertical db except the last.

    With an enabled matrix, pairs it marks infrequent are skipped before any
    intersection is computed. Classes left without members are still
    returned.
    """
    use_matrix = matrix is not None and matrix.enabled
    entries = v.entries
    classes = []
    for i in range(len(entries) - 1):
        item_i, tids_i = entries[i]
        members = []
        for item_j, tids_j in entries[i + 1 :]:
            if use_matrix and matrix.support(item_i, item_j) < min_sup_count:
                continue
            tids_ij = intersect(tids_i, tids_j)
            if len(tids_ij) >= min_sup_count:
                members.append(Atom((item_i, item_j), tids_ij))
        classes.append(EquivalenceClass(item_i, i, tuple(members)))
    return classes


def _bottom_up(members, min_sup_count, out, depth, max_depth):
    if depth > max_depth:
        raise RuntimeError(
            f"Bottom-up recursion reached depth {depth} (bound {max_depth})"
        )
    for i, a in enumerate(members):
        next_level = []
        for b in members[i + 1 :]:
            tids = intersect(a.tidset, b.tidset)
            if len(tids) >= min_sup_count:
                atom = Atom((*a.itemset, b.itemset[-1]), tids)
                next_level.append(atom)
                out.append((atom.items, atom.support))
        if next_level:
            _bottom_up(next_level, min_sup_count, out, depth + 1, max_depth)


def bottom_up(ec, min_sup_count):
    """Frequent itemsets of size >= 3 inside the class's sublattice.

    The class's own 2-itemsets are not included; see `class_pairs`.
    """
    out = []
    _bottom_up(list(ec.members), min_sup_count, out, 1, max(len(ec.members), 1))
    return out


def class_pairs(ec):
    return [(m.items, m.support) for m in ec.members]


def mine_class(ec, min_sup_count):
    return class_pairs(ec) + bottom_up(ec, min_sup_count)
