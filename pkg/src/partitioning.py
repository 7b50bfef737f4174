"""Equivalence-class partitioners and workload-balance statistics.

A class is keyed by the rank v of its prefix in the support order. The
default partitioner gives every class its own partition; the hash
partitioners fold the keys into p partitions.
"""

from dataclasses import dataclass
from enum import StrEnum


class PartitionScheme(StrEnum):
    DEFAULT = "default"
    HASH = "hash"
    REVERSE_HASH = "reverse_hash"


def assign_default(v, n):
    if not 0 <= v < n - 1:
        raise ValueError(f"Class key {v} outside [0, {n - 1})")
    return v


def assign_hash(v, p):
    if p < 1:
        raise ValueError(f"Partition count must be >= 1, got {p}")
    return v % p


def assign_reverse_hash(v, p):
    """v mod p, mirrored to (p - 1) - r once v wraps past p."""
    if p < 1:
        raise ValueError(f"Partition count must be >= 1, got {p}")
    r = v % p
    if v >= p:
        return (p - 1) - r
    return r


@dataclass(frozen=True)
class PartitionPlan:
    scheme: PartitionScheme
    p: int
    assignment: dict
    workloads: tuple

    def partitions(self):
        """Class keys per partition id, ascending within each partition."""
        groups = [[] for _ in range(self.p)]
        for v, pid in sorted(self.assignment.items()):
            groups[pid].append(v)
        return groups


@dataclass(frozen=True)
class WorkloadStats:
    max: int
    min: int
    mean: float
    ratio: float


def plan_partitions(classes, scheme, p=None):
    """Assign each class (by rank) to a partition and total member counts.

    The default scheme always uses one partition per class; passing a
    different `p` with it is an error.
    """
    scheme = PartitionScheme(scheme)
    n = len(classes) + 1
    if scheme is PartitionScheme.DEFAULT:
        if p is not None and p != n - 1:
            raise ValueError(f"Default partitioning uses n - 1 = {n - 1} partitions")
        p = n - 1
        assign = assign_default
        bound = n
    else:
        if p is None or p < 1:
            raise ValueError(f"Partition count must be >= 1, got {p}")
        assign = assign_hash if scheme is PartitionScheme.HASH else assign_reverse_hash
        bound = p
    assignment = {}
    workloads = [0] * p
    for ec in classes:
        pid = assign(ec.rank, bound)
        assignment[ec.rank] = pid
        workloads[pid] += len(ec.members)
    return PartitionPlan(scheme, p, assignment, tuple(workloads))


def workload_stats(plan):
    loads = plan.workloads
    if not loads:
        return WorkloadStats(0, 0, 0.0, 1.0)
    mean = sum(loads) / len(loads)
    ratio = max(loads) / mean if mean else 1.0
    return WorkloadStats(max(loads), min(loads), mean, ratio)
