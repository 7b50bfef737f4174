"""Bounded worker pool with ordered, deterministic result collection."""

from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor

import structlog

log = structlog.get_logger()

EXECUTORS = {
    "thread": ThreadPoolExecutor,
    "process": ProcessPoolExecutor,
}


def split(seq, parts):
    """Cut `seq` into at most `parts` contiguous, order-preserving chunks."""
    if parts < 1:
        raise ValueError(f"parts must be >= 1, got {parts}")
    n = len(seq)
    if n == 0:
        return []
    parts = min(parts, n)
    size, extra = divmod(n, parts)
    chunks = []
    start = 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(seq[start:end])
        start = end
    return chunks


def run_tasks(fn, tasks, workers=1, executor="thread"):
    """Apply `fn` to every task argument tuple; results come back in task order.

    With a single worker (or a single task) everything runs inline so small
    inputs pay no pool start-up cost.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if executor not in EXECUTORS:
        raise ValueError(
            f"Unknown executor {executor!r}; use one of {sorted(EXECUTORS)}"
        )
    tasks = list(tasks)
    if workers == 1 or len(tasks) <= 1:
        return [fn(*args) for args in tasks]
    log.debug("pool_dispatch", executor=executor, workers=workers, tasks=len(tasks))
    with EXECUTORS[executor](max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*tasks, strict=True)))
