"""Acceptance criteria 1-10, one named suite each.

Run under pytest (a one-line verdict per criterion is printed in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""
import sys

import pytest

from polycalc.suites import ACCEPTANCE, SuiteConfig, run_suite

# criterion -> wall-time budget in seconds, where one is stated
BUDGETS = {1: 60.0, 2: 120.0}
RESULTS: dict[int, str] = {}


def _line(criterion: int, report) -> str:
    status = "PASS" if report.ok else "FAIL"
    extra = f"; smallest failure: {report.minimal.label} ({report.minimal.reason})" if report.minimal else ""
    return (f"criterion {criterion:2d} {status}  {report.name}: {report.cases} cases, "
            f"{report.failure_count} failures, {report.wall_time:.1f}s{extra}")


@pytest.mark.parametrize("suite", ACCEPTANCE, ids=lambda s: f"criterion-{s.criterion}-{s.name}")
def test_criterion(suite):
    report = run_suite(suite.name, config=SuiteConfig())
    RESULTS[suite.criterion] = _line(suite.criterion, report)
    assert report.ok, report.summary()
    if suite.criterion in BUDGETS:
        assert report.wall_time < BUDGETS[suite.criterion]


def test_every_criterion_has_exactly_one_suite():
    assert sorted(s.criterion for s in ACCEPTANCE) == list(range(1, 11))


if __name__ == "__main__":
    ok = True
    for s in ACCEPTANCE:
        r = run_suite(s.name, config=SuiteConfig())
        print(_line(s.criterion, r), flush=True)
        ok &= r.ok
    sys.exit(0 if ok else 1)
