"""Tests for the worker pool helpers."""

import pytest

from src.workers import run_tasks, split


def _square_plus(x, y):
    return x * x + y


class TestSplit:
    def test_contiguous_and_complete(self):
        chunks = split(list(range(10)), 3)
        assert chunks == [[0, 1, 2, 3], [4, 5, 6], [7, 8, 9]]

    def test_more_parts_than_items(self):
        assert split((1, 2), 5) == [(1,), (2,)]

    def test_empty(self):
        assert split([], 4) == []

    def test_invalid_parts(self):
        with pytest.raises(ValueError):
            split([1], 0)


class TestRunTasks:
    @pytest.mark.parametrize("executor", ["thread", "process"])
    def test_results_in_task_order(self, executor):
        tasks = [(i, 1) for i in range(20)]
        assert run_tasks(_square_plus, tasks, 4, executor) == [
            i * i + 1 for i in range(20)
        ]

    def test_inline_with_one_worker(self):
        assert run_tasks(_square_plus, [(2, 0), (3, 0)], 1) == [4, 9]

    def test_no_tasks(self):
        assert run_tasks(_square_plus, [], 4) == []

    def test_invalid_workers(self):
        with pytest.raises(ValueError):
            run_tasks(_square_plus, [(1, 1)], 0)

    def test_unknown_executor(self):
        with pytest.raises(ValueError, match="Unknown executor"):
            run_tasks(_square_plus, [(1, 1)], 2, "cluster")
