"""Mining pipelines: the Eclat variants, the Apriori baseline and the oracle."""

import structlog

from src.pipelines.apriori import run_apriori
from src.pipelines.eclat import run_v1, run_v2, run_v3, run_v4, run_v5
from src.pipelines.oracle import OracleLimitError, run_oracle
from src.pipelines.result import (
    MiningConfig,
    MiningResult,
    RunMetrics,
    Variant,
    canonicalize,
    write_frequent_items,
    write_itemsets,
)

log = structlog.get_logger()

RUNNERS = {
    Variant.V1: run_v1,
    Variant.V2: run_v2,
    Variant.V3: run_v3,
    Variant.V4: run_v4,
    Variant.V5: run_v5,
    Variant.APRIORI: run_apriori,
    Variant.ORACLE: run_oracle,
}


def mine(db, cfg):
    """Run the pipeline named by `cfg.variant`."""
    log.info(
        "mining_started",
        variant=str(cfg.variant),
        min_sup=str(cfg.min_sup),
        workers=cfg.workers,
        transactions=db.n_transactions,
    )
    result = RUNNERS[cfg.variant](db, cfg)
    log.info(
        "mining_complete",
        variant=str(cfg.variant),
        itemsets=len(result),
        seconds=round(result.metrics.total, 4),
    )
    return result


__all__ = [
    "RUNNERS",
    "MiningConfig",
    "MiningResult",
    "OracleLimitError",
    "RunMetrics",
    "Variant",
    "canonicalize",
    "mine",
    "run_apriori",
    "run_oracle",
    "run_v1",
    "run_v2",
    "run_v3",
    "run_v4",
    "run_v5",
    "write_frequent_items",
    "write_itemsets",
]
