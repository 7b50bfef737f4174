"""Read and validate the benchmark dataset registry."""

import json
from pathlib import Path

import structlog

log = structlog.get_logger()

DATA_DIR = Path(__file__).parent
DATASETS_JSON = DATA_DIR / "datasets.json"
SAMPLE_DAT = DATA_DIR / "sample.dat"

REQUIRED_KEYS = {
    "name",
    "filename",
    "kind",
    "transactions",
    "items",
    "avg_width",
    "tri_matrix",
    "cores_min_sup",
}
EXPECTED_DATASET_COUNT = 7


def load_datasets():
    """Load and validate datasets.json. Returns list of dicts."""
    log.info("loading_datasets", path=str(DATASETS_JSON))
    with open(DATASETS_JSON, encoding="utf-8") as f:
        datasets = json.load(f)

    for i, ds in enumerate(datasets):
        missing = REQUIRED_KEYS - set(ds.keys())
        if missing:
            raise ValueError(f"Dataset {i} missing keys: {missing}")

    if len(datasets) != EXPECTED_DATASET_COUNT:
        raise ValueError(
            f"Expected {EXPECTED_DATASET_COUNT} datasets, got {len(datasets)}"
        )

    log.info("datasets_loaded", count=len(datasets))
    return datasets


def find_dataset(name):
    for ds in load_datasets():
        if ds["name"].lower() == name.lower():
            return ds
    raise ValueError(f"Unknown dataset: {name!r}")


def dataset_path(name, data_dir):
    """Where the registry expects `name`'s file under `data_dir`."""
    return Path(data_dir) / find_dataset(name)["filename"]
