"""One check per acceptance criterion, each at its stated tolerance.

The pass/fail lines are also repeated in the pytest terminal summary.
"""
import pytest

from mzvrel.suites import SUITES

LINES = []

TIME_LIMITS = {
    "example": 1,
    "grsf-real": 300,
    "grsf-finite": 120,
}


@pytest.mark.parametrize("name", list(SUITES))
def test_criterion(name):
    result = SUITES[name]()
    print(result.line())
    LINES.append(result.line())
    for failure in result.failures[:10]:
        print("    " + failure)
    assert result.passed, result.failures[:10]
    assert result.cases > 0
    if name in TIME_LIMITS:
        assert result.seconds < TIME_LIMITS[name]
