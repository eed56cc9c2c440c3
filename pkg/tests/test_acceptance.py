"""One test per acceptance criterion; the summary prints a pass/fail line for each."""
import pytest

import acceptance
import conftest


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    verdict = acceptance.run(number)
    conftest.VERDICTS[number] = verdict.line()
    print(verdict.line())
    assert verdict.passed, verdict.line()
