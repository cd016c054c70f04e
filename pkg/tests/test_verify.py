import random
from types import SimpleNamespace

import pandas as pd
import pytest
from sqlalchemy import create_engine

from pcurvature import settings, verify
from pcurvature.exceptions import DegenerateInput
from pcurvature.verify import (
    REGISTRY,
    SUITES,
    Check,
    CheckOutcome,
    ReportPipeline,
    check,
    first_failure,
    run_check,
    run_suite,
)


def passing(rng):
    return CheckOutcome(True)


def failing(rng):
    return CheckOutcome(False, "mismatch")


def raising(rng):
    raise DegenerateInput("bad input")


def item(name, passed=True):
    return {"suite": "paper", "anchor": name, "check": name, "passed": passed, "detail": ""}


class TestRegistry:
    def test_both_suites_populated(self):
        assert {entry.suite for entry in REGISTRY} == set(SUITES)

    def test_names_are_unique(self):
        names = [entry.name for entry in REGISTRY]
        assert len(names) == len(set(names))

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            check("bogus", "anchor")


class TestReportPipeline:
    def test_in_memory(self):
        pipeline = ReportPipeline(None, "verify_report")
        pipeline.open()
        pipeline.process_item(item("a"))
        pipeline.close()
        df = pipeline.dataframe()
        assert list(df.columns) == ["suite", "anchor", "check", "passed", "detail"]
        assert len(df) == 1
        assert pipeline.engine is None

    def test_sqlite_batches(self, tmp_path):
        uri = f"sqlite:///{tmp_path / 'report.db'}"
        pipeline = ReportPipeline(uri, "verify_report", batch_size=2)
        pipeline.open()
        for name in ("a", "b", "c"):
            pipeline.process_item(item(name))
        assert len(pipeline.items) == 1
        pipeline.close()

        saved = pd.read_sql_table("verify_report", create_engine(uri))
        assert list(saved["anchor"]) == ["a", "b", "c"]
        assert "run_timestamp" in saved.columns

    def test_from_settings(self):
        pipeline = ReportPipeline.from_settings()
        assert pipeline.table_name == "verify_report"
        assert pipeline.batch_size == 50


class TestRunSuite:
    @pytest.fixture
    def registry(self, monkeypatch):
        entries = [
            Check("paper", "first", "passing", passing),
            Check("paper", "second", "failing", failing),
            Check("properties", "third", "raising", raising),
        ]
        monkeypatch.setattr(verify, "REGISTRY", entries)
        return entries

    def test_run_check_catches_library_errors(self):
        outcome = run_check(Check("paper", "x", "raising", raising), 0)
        assert not outcome.passed
        assert outcome.detail.startswith("DegenerateInput")

    def test_filter_by_suite(self, registry):
        report = run_suite("paper", pipeline=ReportPipeline(None, "t"))
        assert list(report["check"]) == ["passing", "failing"]
        assert first_failure(report) == "second"

    def test_all(self, registry):
        report = run_suite("all", pipeline=ReportPipeline(None, "t"))
        assert list(report["passed"]) == [True, False, False]

    def test_no_failure(self, registry):
        report = run_suite("paper", pipeline=ReportPipeline(None, "t"))
        assert first_failure(report.iloc[:1]) is None

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("bogus")


@pytest.mark.parametrize(
    "fn",
    [
        verify.formula_term_counts,
        verify.formula_coefficients,
        verify.ordered_coefficients,
        verify.rank1_collapse,
        verify.f_theta_goldens,
        verify.g_k_goldens,
        verify.strata_p3,
        verify.count_p3_golden,
        verify.h21_p5,
        verify.quintic_golden,
        verify.hurwitz_goldens,
    ],
)
def test_golden_checks_pass(fn):
    outcome = fn(random.Random(0))
    assert outcome.passed, outcome.detail


@pytest.mark.slow
@pytest.mark.parametrize(
    "fn",
    [
        verify.system_p7_golden,
        verify.example_curve_p7,
        verify.entry_relations_golden,
        verify.det_psi_certificate,
    ],
)
def test_slow_golden_checks_pass(fn):
    outcome = fn(random.Random(0))
    assert outcome.passed, outcome.detail


@pytest.mark.slow
@pytest.mark.parametrize(
    "fn",
    [entry.fn for entry in REGISTRY if entry.suite == "properties"],
    ids=[entry.name for entry in REGISTRY if entry.suite == "properties"],
)
def test_property_checks_pass(fn):
    outcome = fn(random.Random(0))
    assert outcome.passed, outcome.detail


class TestCountP7Sweep:
    @pytest.fixture
    def fake_counts(self, monkeypatch):
        monkeypatch.setitem(settings.PROPERTY_SAMPLES, "count_p7", 3)

        def install(*values):
            results = iter(values)

            def fake_count_p7(curve):
                distinct = next(results)
                return SimpleNamespace(
                    distinct=distinct, cross_check=distinct, pipeline_applicable=True
                )

            monkeypatch.setattr(verify, "count_p7", fake_count_p7)

        return install

    def test_generic_value_is_reached(self, fake_counts):
        fake_counts(13, 14, 14)
        assert verify.count_p7_sweep(random.Random(0)).passed

    def test_count_never_reaching_14_fails(self, fake_counts):
        fake_counts(0, 0, 0)
        outcome = verify.count_p7_sweep(random.Random(0))
        assert not outcome.passed
        assert "reached 14" in outcome.detail

    def test_count_above_bound_fails(self, fake_counts):
        fake_counts(14, 15, 14)
        outcome = verify.count_p7_sweep(random.Random(0))
        assert not outcome.passed
        assert "15 > 14" in outcome.detail


class TestStrataCheck:
    def test_reports_the_sign_of_a3(self):
        outcome = verify.strata_p3(random.Random(0))
        assert outcome.passed
        assert "a1^3 - a3" in outcome.detail
        assert "p-rank 1 where the reference one vanishes: [(" in outcome.detail
