import pytest

from analyse_src.suite_registry import SUITE_CHOICES, SUITES, get_suite, run_suites
from analyse_src.verification_template import REPORT_COLUMNS, CheckOutcome, VerificationTemplate
from src.errors import InputError
from src.settings import get_settings


class TwoChecks(VerificationTemplate):
    name = "two"

    def run_checks(self, seed, samples):
        yield CheckOutcome("equal", 1, 1)
        yield CheckOutcome("different", 1, 2)


def test_template_reports_each_check():
    report = TwoChecks().execute_verification(seed=0, samples=1)
    assert list(report.columns) == REPORT_COLUMNS
    assert report["passed"].tolist() == [True, False]
    assert report["suite"].unique().tolist() == ["two"]


def test_registry_lists_every_suite():
    assert set(SUITES) == {"rank10", "spans", "group", "cubic", "beautiful", "invariants", "partner", "roundtrip", "descent"}
    assert SUITE_CHOICES[-1] == "all"
    with pytest.raises(InputError):
        get_suite("nonsense")


def test_beautiful_suite_passes():
    report = run_suites(["beautiful"], seed=get_settings().seed, samples=get_settings().relation_samples)
    assert report["passed"].all()


def test_roundtrip_suite_passes():
    report = get_suite("roundtrip").execute_verification(get_settings().seed, get_settings().relation_samples)
    assert len(report) == 2
    assert report["passed"].all()


def test_group_suite_passes(weyl_group):
    report = get_suite("group").execute_verification(get_settings().seed, get_settings().relation_samples)
    assert report["passed"].all()


def test_no_suites_give_empty_report():
    report = run_suites([], seed=1, samples=1)
    assert report.empty
    assert list(report.columns) == REPORT_COLUMNS


@pytest.mark.slow
def test_every_suite_passes(relations):
    report = run_suites(["all"], seed=relations.seed, samples=relations.sample_count)
    assert report["passed"].all()
