"""One test per acceptance criterion at the default seed; each prints a PASS/FAIL line."""

import pytest

from framedlin.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA], ids=[f"criterion_{n:02d}" for n, *_ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.within_budget, f"{result.seconds:.2f}s exceeds the {result.budget}s budget"
