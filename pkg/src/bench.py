"""Benchmark harness: min_sup sweeps, worker-count sweeps and dataset scaling.

Every cell of the dataset x replication x min_sup x variant x workers
cross-product is mined `repeat` times, one after another, and produces one
CSV row per run. Runs of the same (input file, replication, min_sup) must
agree on the itemset count; a disagreement aborts the benchmark.

Unless a matrix mode is given, registry datasets run with their recorded
setting and plain files with `auto`.
"""

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import NamedTuple

import structlog

from src.config import DATA_DIR, DEFAULT_EXECUTOR, DEFAULT_PARTITIONS, OUTPUT_DIR
from src.counting import TRI_MATRIX_MODES
from src.data.registry import dataset_path, find_dataset
from src.dataset import SupportThreshold, load_horizontal, replicate
from src.pipelines import MiningConfig, Variant, mine

log = structlog.get_logger()

CSV_FIELDS = [
    "dataset",
    "variant",
    "min_sup",
    "min_sup_count",
    "workers",
    "replication",
    "p",
    "tri_matrix",
    "run",
    "phase_1_s",
    "phase_2_s",
    "phase_3_s",
    "phase_4_s",
    "total_s",
    "itemsets",
    "workload_ratio",
    "reduction_pct",
]

PRESETS = ("cores", "scaling")
CORE_SWEEP = (2, 4, 6, 8, 10)
SCALING_FACTORS = (1, 2, 4, 8, 16)
SCALING_MIN_SUP = 0.05


class ConsistencyError(RuntimeError):
    """Two runs over the same input reported different itemset counts."""


@dataclass(frozen=True)
class BenchSpec:
    datasets: tuple
    variants: tuple
    min_sups: tuple
    workers: tuple = (1,)
    replications: tuple = (1,)
    p: int = DEFAULT_PARTITIONS
    tri_matrix: str | None = None
    output_dir: Path = OUTPUT_DIR
    repeat: int = 1
    warmup: bool = False
    executor: str = DEFAULT_EXECUTOR
    data_dir: Path = field(default=DATA_DIR)

    def __post_init__(self):
        for name in ("datasets", "variants", "min_sups", "workers", "replications"):
            if not getattr(self, name):
                raise ValueError(f"BenchSpec.{name} must not be empty")
        if self.repeat < 1:
            raise ValueError(f"repeat must be >= 1, got {self.repeat}")
        if any(w < 1 for w in self.workers):
            raise ValueError("worker counts must be >= 1")
        if any(r < 1 for r in self.replications):
            raise ValueError("replication factors must be >= 1")
        if self.tri_matrix is not None and self.tri_matrix not in TRI_MATRIX_MODES:
            raise ValueError(f"tri_matrix must be one of {TRI_MATRIX_MODES}")
        object.__setattr__(
            self, "variants", tuple(Variant(v) for v in self.variants)
        )
        object.__setattr__(
            self,
            "min_sups",
            tuple(
                m if isinstance(m, SupportThreshold) else SupportThreshold(m)
                for m in self.min_sups
            ),
        )


class DatasetRef(NamedTuple):
    label: str
    path: Path
    tri_matrix: str


def _registry_mode(ds):
    return "auto" if ds["tri_matrix"] else "off"


def resolve_dataset(ref, data_dir):
    """A dataset reference is a file path or a registry name."""
    path = Path(ref)
    if path.is_file():
        return DatasetRef(path.stem, path, "auto")
    ds = find_dataset(ref)
    return DatasetRef(ds["name"], dataset_path(ref, data_dir), _registry_mode(ds))


def preset_specs(preset, spec):
    """Expand `spec` into one spec per dataset following a sweep preset."""
    if preset not in PRESETS:
        raise ValueError(f"Unknown preset {preset!r}; use one of {PRESETS}")
    if preset == "scaling":
        return [
            replace(
                spec,
                replications=SCALING_FACTORS,
                min_sups=(SupportThreshold(SCALING_MIN_SUP),),
            )
        ]
    specs = []
    for ref in spec.datasets:
        ds = find_dataset(ref)
        if ds["cores_min_sup"] is None:
            raise ValueError(f"Dataset {ref!r} has no core-sweep min_sup")
        specs.append(
            replace(
                spec,
                datasets=(ref,),
                workers=CORE_SWEEP,
                min_sups=(SupportThreshold(ds["cores_min_sup"]),),
                tri_matrix=spec.tri_matrix or _registry_mode(ds),
            )
        )
    return specs


def _seconds(value):
    return "" if value is None else f"{value:.6f}"


def _row(label, cfg, factor, run, result):
    m = result.metrics
    row = {
        "dataset": label,
        "variant": str(cfg.variant),
        "min_sup": str(cfg.min_sup),
        "min_sup_count": m.min_sup_count,
        "workers": cfg.workers,
        "replication": factor,
        "p": cfg.p,
        "tri_matrix": "on" if m.tri_matrix_used else "off",
        "run": run,
        "total_s": _seconds(m.total),
        "itemsets": len(result),
        "workload_ratio": (
            "" if m.workload_ratio is None else f"{m.workload_ratio:.4f}"
        ),
        "reduction_pct": "" if m.reduction_pct is None else f"{m.reduction_pct:.2f}",
    }
    for i in range(1, 5):
        row[f"phase_{i}_s"] = _seconds(m.phases.get(f"phase_{i}"))
    return row


def _check_consistent(expected, key, variant, count):
    if key not in expected:
        expected[key] = (variant, count)
        return
    first_variant, first_count = expected[key]
    if count != first_count:
        raise ConsistencyError(
            f"{key}: {variant} found {count} itemsets, "
            f"{first_variant} found {first_count}"
        )


def iter_bench(spec):
    """Run every benchmark cell sequentially, yielding each CSV row as it
    completes."""
    expected = {}
    count = 0
    for ref in spec.datasets:
        dataset = resolve_dataset(ref, spec.data_dir)
        base = load_horizontal(dataset.path)
        mode = spec.tri_matrix or dataset.tri_matrix
        source = str(dataset.path.resolve())
        for factor in spec.replications:
            db = replicate(base, factor)
            for min_sup in spec.min_sups:
                for variant in spec.variants:
                    for workers in spec.workers:
                        cfg = MiningConfig(
                            variant,
                            min_sup,
                            tri_matrix_mode=mode,
                            p=spec.p,
                            workers=workers,
                            executor=spec.executor,
                        )
                        if spec.warmup:
                            mine(db, cfg)
                        for run in range(1, spec.repeat + 1):
                            result = mine(db, cfg)
                            key = (source, factor, str(min_sup))
                            _check_consistent(expected, key, variant, len(result))
                            count += 1
                            yield _row(dataset.label, cfg, factor, run, result)
    log.info("bench_complete", rows=count)


def run_bench(spec):
    return list(iter_bench(spec))


def write_report(rows, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_FIELDS)
        writer.writeheader()
        writer.writerows(rows)
    log.info("report_written", path=str(path), rows=len(rows))
    return path
