"""Fixtures for end-to-end runs against the benchmark datasets.

Dataset files are looked up under ECLAT_DATA_DIR (default ./datasets);
tests that need a missing file are skipped.
"""

import subprocess
import sys
from functools import cache
from pathlib import Path

import pytest

from src.config import DATA_DIR
from src.data.registry import dataset_path
from src.dataset import load_horizontal
from src.pipelines import MiningConfig, mine

ROOT = Path(__file__).resolve().parents[2]


def run_cli(*args, timeout=600):
    """Run `python -m src.cli` in a subprocess and return the CompletedProcess."""
    return subprocess.run(
        [sys.executable, "-m", "src.cli", "--log-level", "warning", *args],
        cwd=ROOT,
        capture_output=True,
        text=True,
        timeout=timeout,
    )


@cache
def _load(name):
    return load_horizontal(dataset_path(name, DATA_DIR))


@pytest.fixture(scope="session")
def dataset():
    """Return a loader for registry datasets, skipping absent files."""

    def _get(name):
        path = dataset_path(name, DATA_DIR)
        if not path.is_file():
            pytest.skip(f"{name} not found at {path}")
        return _load(name)

    return _get


@pytest.fixture(scope="session")
def run():
    """Mine with the given variant and keyword config; workers default to 4."""

    def _run(db, variant, min_sup, **kwargs):
        kwargs.setdefault("workers", 4)
        return mine(db, MiningConfig(variant, min_sup, **kwargs))

    return _run
