"""Shared fixtures: small hand-checkable databases and config builders."""

import pytest
import structlog

from src.dataset import SupportThreshold, parse_horizontal
from src.pipelines import MiningConfig

# Four transactions; at min_sup 2 exactly the six itemsets below are frequent.
SMALL_TEXT = "1 2 3\n1 2\n1 3\n2 3\n"
SMALL_EXPECTED = {
    ("1",): 3,
    ("2",): 3,
    ("3",): 3,
    ("1", "2"): 2,
    ("1", "3"): 2,
    ("2", "3"): 2,
}


def lattice_text():
    """Items 1..5 with supports 3..7, so the support order is 1 < 2 < ... < 5
    and every pair (indeed every subset) reaches support 3."""
    lines = ["1 2 3 4 5"] * 3
    for extra, copies in (("2", 1), ("3", 2), ("4", 3), ("5", 4)):
        lines += [extra] * copies
    return "\n".join(lines) + "\n"


@pytest.fixture(autouse=True)
def _reset_structlog():
    yield
    structlog.reset_defaults()


@pytest.fixture
def small_db():
    return parse_horizontal(SMALL_TEXT)


@pytest.fixture
def lattice_db():
    return parse_horizontal(lattice_text())


@pytest.fixture
def make_config():
    def _make(variant, min_sup, **kwargs):
        kwargs.setdefault("workers", 1)
        return MiningConfig(variant, SupportThreshold(min_sup), **kwargs)

    return _make


def named(itemsets, db):
    """Map canonical dense-id itemsets to original tokens for readable asserts."""
    return {
        tuple(db.item_names[i] for i in items): support for items, support in itemsets
    }
