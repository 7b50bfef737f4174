"""Tests for the benchmark harness in bench.py."""

import csv
import shutil
from dataclasses import replace

import pytest

from src.bench import (
    CORE_SWEEP,
    CSV_FIELDS,
    SCALING_FACTORS,
    BenchSpec,
    ConsistencyError,
    DatasetRef,
    iter_bench,
    preset_specs,
    resolve_dataset,
    run_bench,
    write_report,
)
from src.data.registry import SAMPLE_DAT
from src.pipelines import MiningResult, RunMetrics, Variant
from tests.conftest import SMALL_TEXT


@pytest.fixture
def sample_file(tmp_path):
    path = tmp_path / "small.dat"
    path.write_text(SMALL_TEXT)
    return path


def _spec(path, **kwargs):
    kwargs.setdefault("variants", ("v1", "v5"))
    kwargs.setdefault("min_sups", (2,))
    return BenchSpec(datasets=(str(path),), **kwargs)


# ---------------------------------------------------------------------------
# BenchSpec validation
# ---------------------------------------------------------------------------


class TestBenchSpec:
    def test_coerces_variants_and_thresholds(self, sample_file):
        spec = _spec(sample_file, min_sups=(0.5, 2))
        assert spec.variants == (Variant.V1, Variant.V5)
        assert [m.raw for m in spec.min_sups] == [0.5, 2]

    def test_empty_axis_rejected(self, sample_file):
        with pytest.raises(ValueError, match="variants must not be empty"):
            _spec(sample_file, variants=())

    def test_bad_repeat(self, sample_file):
        with pytest.raises(ValueError, match="repeat"):
            _spec(sample_file, repeat=0)

    def test_bad_worker_count(self, sample_file):
        with pytest.raises(ValueError, match="worker counts"):
            _spec(sample_file, workers=(0,))

    def test_unknown_variant(self, sample_file):
        with pytest.raises(ValueError):
            _spec(sample_file, variants=("v9",))

    def test_unknown_matrix_mode(self, sample_file):
        with pytest.raises(ValueError, match="tri_matrix"):
            _spec(sample_file, tri_matrix="sometimes")


# ---------------------------------------------------------------------------
# Dataset references and presets
# ---------------------------------------------------------------------------


class TestResolveDataset:
    def test_existing_file(self, sample_file):
        ref = resolve_dataset(str(sample_file), "unused")
        assert ref == DatasetRef("small", sample_file, "auto")

    def test_registry_name(self, tmp_path):
        ref = resolve_dataset("Mushroom", tmp_path)
        assert ref.label == "mushroom"
        assert ref.path == tmp_path / "mushroom.dat"
        assert ref.tri_matrix == "auto"

    def test_registry_matrix_setting(self, tmp_path):
        assert resolve_dataset("BMS_WebView_1", tmp_path).tri_matrix == "off"

    def test_unknown_name(self, tmp_path):
        with pytest.raises(ValueError, match="Unknown dataset"):
            resolve_dataset("retail", tmp_path)


def _registry_spec(*names):
    return BenchSpec(datasets=names, variants=("v5",), min_sups=(1,))


class TestPresets:
    def test_cores_one_spec_per_dataset(self):
        base = _registry_spec("chess", "mushroom")
        specs = preset_specs("cores", base)
        assert [s.datasets for s in specs] == [("chess",), ("mushroom",)]
        assert all(s.workers == CORE_SWEEP for s in specs)
        assert [s.min_sups[0].raw for s in specs] == [0.6, 0.15]

    def test_cores_takes_registry_matrix_setting(self):
        specs = preset_specs("cores", _registry_spec("BMS_WebView_2", "chess"))
        assert [s.tri_matrix for s in specs] == ["off", "auto"]

    def test_cores_keeps_explicit_matrix_mode(self):
        base = replace(_registry_spec("BMS_WebView_2"), tri_matrix="on")
        (spec,) = preset_specs("cores", base)
        assert spec.tri_matrix == "on"

    def test_cores_needs_sweep_support(self):
        base = _registry_spec("c20d10k")
        with pytest.raises(ValueError, match="no core-sweep min_sup"):
            preset_specs("cores", base)

    def test_scaling(self):
        base = _registry_spec("T10I4D100K")
        (spec,) = preset_specs("scaling", base)
        assert spec.replications == SCALING_FACTORS
        assert spec.min_sups[0].raw == 0.05

    def test_unknown_preset(self):
        base = _registry_spec("chess")
        with pytest.raises(ValueError, match="Unknown preset"):
            preset_specs("nightly", base)


# ---------------------------------------------------------------------------
# Running a sweep
# ---------------------------------------------------------------------------


class TestRunBench:
    def test_one_row_per_run(self, sample_file):
        spec = _spec(
            sample_file,
            variants=("v1", "v2", "v3", "v4", "v5", "apriori"),
            workers=(1, 2),
            repeat=2,
        )
        rows = run_bench(spec)
        assert len(rows) == 6 * 2 * 2
        assert {r["itemsets"] for r in rows} == {6}
        assert {r["dataset"] for r in rows} == {"small"}

    def test_phase_columns(self, sample_file):
        rows = run_bench(_spec(sample_file, variants=("v1", "v5")))
        v1, v5 = rows
        assert v1["phase_4_s"] == ""
        assert v5["phase_4_s"] != ""
        assert v1["reduction_pct"] == ""
        assert v5["reduction_pct"] == "0.00"
        assert v1["min_sup_count"] == 2

    def test_replication_scales_support(self, sample_file):
        spec = _spec(
            sample_file, variants=("v5",), min_sups=(0.5,), replications=(1, 3)
        )
        rows = run_bench(spec)
        assert [r["min_sup_count"] for r in rows] == [2, 6]
        assert [r["itemsets"] for r in rows] == [6, 6]

    def test_disagreeing_variants_abort(self, sample_file, monkeypatch):
        def fake_mine(db, cfg):
            size = 1 if cfg.variant == Variant.V5 else 2
            return MiningResult([((i,), 1) for i in range(size)], RunMetrics())

        monkeypatch.setattr("src.bench.mine", fake_mine)
        with pytest.raises(ConsistencyError, match="v5 found 1 itemsets"):
            run_bench(_spec(sample_file))

    def test_rows_before_a_failure_are_yielded(self, sample_file, monkeypatch):
        def fake_mine(db, cfg):
            size = 1 if cfg.variant == Variant.V5 else 2
            return MiningResult([((i,), 1) for i in range(size)], RunMetrics())

        monkeypatch.setattr("src.bench.mine", fake_mine)
        rows = []
        with pytest.raises(ConsistencyError):
            for row in iter_bench(_spec(sample_file)):
                rows.append(row)
        assert [r["variant"] for r in rows] == ["v1"]

    def test_same_stem_in_two_directories(self, tmp_path):
        first = tmp_path / "a" / "small.dat"
        second = tmp_path / "b" / "small.dat"
        for path, text in ((first, SMALL_TEXT), (second, "1 2\n1 2\n3\n")):
            path.parent.mkdir()
            path.write_text(text)
        spec = BenchSpec(
            datasets=(str(first), str(second)), variants=("v5",), min_sups=(2,)
        )
        rows = run_bench(spec)
        assert [r["dataset"] for r in rows] == ["small", "small"]
        assert [r["itemsets"] for r in rows] == [6, 3]

    def test_registry_datasets_use_recorded_matrix_setting(self, tmp_path):
        for filename in ("BMS2.dat", "chess.dat"):
            shutil.copy(SAMPLE_DAT, tmp_path / filename)
        spec = BenchSpec(
            datasets=("BMS_WebView_2", "chess"),
            variants=("v1",),
            min_sups=(2,),
            data_dir=tmp_path,
        )
        rows = run_bench(spec)
        assert [(r["dataset"], r["tri_matrix"]) for r in rows] == [
            ("BMS_WebView_2", "off"),
            ("chess", "on"),
        ]

    def test_explicit_matrix_mode_overrides_registry(self, tmp_path):
        shutil.copy(SAMPLE_DAT, tmp_path / "BMS2.dat")
        spec = BenchSpec(
            datasets=("BMS_WebView_2",),
            variants=("v1",),
            min_sups=(2,),
            tri_matrix="on",
            data_dir=tmp_path,
        )
        assert run_bench(spec)[0]["tri_matrix"] == "on"


class TestWriteReport:
    def test_header_and_rows(self, sample_file, tmp_path):
        rows = run_bench(_spec(sample_file))
        path = write_report(rows, tmp_path / "out" / "bench.csv")
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            assert reader.fieldnames == CSV_FIELDS
            written = list(reader)
        assert [r["variant"] for r in written] == ["v1", "v5"]
