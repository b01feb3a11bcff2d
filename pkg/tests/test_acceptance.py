"""Acceptance battery. Each criterion prints one PASS/FAIL line; the lines are
repeated in the terminal summary by conftest.py."""

import pytest

from cyclicfc.acceptance import CRITERIA

LINES = {}


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    res = CRITERIA[name]()
    LINES[name] = res.line()
    print(res.line())
    for label, ok, detail in res.checks:
        print(f"  {'ok ' if ok else 'BAD'} {label} {detail if not ok else ''}".rstrip())
    assert res.passed, res.line()
