"""Read, validate, filter and replicate horizontal transaction databases.

Input is the FIMI/SPMF convention: one transaction per line, items as
whitespace-separated integer tokens. Tokens are remapped to dense 0-based
ids in order of first appearance; a transaction's position (1-based) is its
tid.
"""

import math
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

import structlog

log = structlog.get_logger()

TOKEN_RE = re.compile(r"-?\d+")


class EmptyDatabaseError(ValueError):
    """Raised when an input holds no transactions at all."""


class ParseError(ValueError):
    def __init__(self, line, token):
        super().__init__(f"Line {line}: not an item token: {token!r}")
        self.line = line
        self.token = token


@dataclass(frozen=True)
class HorizontalDb:
    """Transactions of dense item ids, each strictly ascending.

    `item_names[i]` is the original token of dense id `i`. Filtering and
    replication keep the whole item universe, so `item_names` is shared
    between a database and everything derived from it.
    """

    transactions: tuple
    item_names: tuple

    @property
    def n_transactions(self):
        return len(self.transactions)

    @property
    def max_item(self):
        return len(self.item_names) - 1


@dataclass(frozen=True)
class DatasetStats:
    transactions: int
    items: int
    avg_width: float


@dataclass(frozen=True)
class SupportThreshold:
    """A minimum support given as a fraction in (0, 1] or an absolute count."""

    raw: float | int

    def __post_init__(self):
        if isinstance(self.raw, bool):
            raise ValueError("min_sup must be a number")
        if self.is_fraction:
            if not 0 < self.raw <= 1:
                raise ValueError(f"min_sup fraction must be in (0, 1], got {self.raw}")
        elif self.raw < 1:
            raise ValueError(f"Absolute min_sup must be >= 1, got {self.raw}")

    @property
    def is_fraction(self):
        return isinstance(self.raw, float)

    @classmethod
    def parse(cls, text):
        """'0.05' is a fraction, '7' a count; anything else is rejected."""
        text = str(text).strip()
        try:
            if any(c in text for c in ".eE"):
                return cls(float(text))
            return cls(int(text))
        except ValueError as exc:
            raise ValueError(f"Invalid min_sup {text!r}: {exc}") from None

    def resolve(self, n):
        return resolve_min_sup(self, n)

    def __str__(self):
        return str(self.raw)


def resolve_min_sup(threshold, n):
    """Absolute support count for `threshold` over `n` transactions."""
    if n < 1:
        raise ValueError(f"Cannot resolve min_sup over {n} transactions")
    if not isinstance(threshold, SupportThreshold):
        threshold = SupportThreshold(threshold)
    if not threshold.is_fraction:
        return threshold.raw
    # Decimal keeps 0.05 * 100 at exactly 5
    try:
        exact = Decimal(repr(threshold.raw)) * n
    except InvalidOperation:
        raise ValueError(f"Invalid min_sup {threshold.raw!r}") from None
    return max(1, math.ceil(exact))


def parse_horizontal(lines):
    """Parse an iterable of lines (or one string) into a HorizontalDb.

    Blank lines are skipped, so tids count non-blank lines: a blank line in
    the middle of a file shifts every later tid down by one. Tokens are
    compared as integers, so "01" and "1" name the same item.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    ids = {}
    transactions = []
    for lineno, line in enumerate(lines, start=1):
        tokens = line.split()
        if not tokens:
            continue
        items = set()
        for token in tokens:
            if not TOKEN_RE.fullmatch(token):
                raise ParseError(lineno, token)
            token = str(int(token))
            if token not in ids:
                ids[token] = len(ids)
            items.add(ids[token])
        transactions.append(tuple(sorted(items)))
    if not transactions:
        raise EmptyDatabaseError("Input contains no transactions")
    return HorizontalDb(tuple(transactions), tuple(ids))


def load_horizontal(path):
    """Load and parse a transaction file. Returns a HorizontalDb."""
    path = Path(path)
    log.info("loading_dataset", path=str(path))
    with open(path, encoding="utf-8") as f:
        db = parse_horizontal(f)
    log.info(
        "dataset_loaded",
        path=str(path),
        transactions=db.n_transactions,
        items=len(db.item_names),
    )
    return db


def serialize_horizontal(db):
    names = db.item_names
    return "".join(" ".join(names[i] for i in t) + "\n" for t in db.transactions)


def write_horizontal(db, path):
    Path(path).write_text(serialize_horizontal(db), encoding="utf-8")


def filter_transactions(db, frequent_items):
    """Strip items outside `frequent_items`; drop transactions left empty.

    Surviving transactions are renumbered 1..m by position.
    """
    keep = frozenset(frequent_items)
    filtered = []
    for t in db.transactions:
        kept = tuple(i for i in t if i in keep)
        if kept:
            filtered.append(kept)
    return HorizontalDb(tuple(filtered), db.item_names)


def replicate(db, factor):
    """Repeat the transaction list `factor` times."""
    if factor < 1:
        raise ValueError(f"Replication factor must be >= 1, got {factor}")
    return HorizontalDb(db.transactions * factor, db.item_names)


def occurrence_count(db):
    return sum(len(t) for t in db.transactions)


def reduction_percent(original, filtered):
    """Percentage decrease in total item occurrences after filtering."""
    before = occurrence_count(original)
    if before == 0:
        return 0.0
    return 100.0 * (before - occurrence_count(filtered)) / before


def describe(db):
    used = {i for t in db.transactions for i in t}
    width = occurrence_count(db) / db.n_transactions if db.n_transactions else 0.0
    return DatasetStats(db.n_transactions, len(used), width)
