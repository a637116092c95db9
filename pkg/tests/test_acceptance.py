"""The ten acceptance criteria, one test each; every run prints a PASS/FAIL line."""

import pytest

from brgenus.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line)
    assert result.ok, result.line
