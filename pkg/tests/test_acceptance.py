"""Acceptance criteria 1-13; each test prints one PASS/FAIL line.

Criteria 6 and 7 are implemented as literally stated and are expected to
fail; 6b and 7b check the corrected statements.
"""

import pytest

from motstats.acceptance import CRITERIA

KNOWN_FALSE = {"6", "7"}


def _params():
    for key in CRITERIA:
        marks = [pytest.mark.xfail(strict=True, reason="false as stated")] if key in KNOWN_FALSE else []
        yield pytest.param(key, id=f"criterion_{key}", marks=marks)


@pytest.mark.parametrize("key", list(_params()))
def test_criterion(key, capsys):
    result = CRITERIA[key]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


if __name__ == "__main__":
    for fn in CRITERIA.values():
        print(fn().line())
