"""Acceptance gate: runs every release criterion at its pinned tolerance
and prints one PASS/FAIL line per criterion (visible with pytest -s)."""

import pytest

from rieszwell import verification


@pytest.fixture(scope="module")
def results():
    return verification.run_all()


def test_suite_covers_all_criteria(results):
    assert [r.number for r in results] == list(range(1, 11))


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(results, number):
    result = results[number - 1]
    print(result.line())
    assert result.passed, result.line() + f" details={result.details!r}"


def test_report_shape(results):
    report = verification.report_dict(results)
    assert report["schema"] == 1
    assert report["all_passed"] is True
    assert len(report["criteria"]) == 10
    for entry in report["criteria"]:
        assert entry["runtime_seconds"] >= 0.0
