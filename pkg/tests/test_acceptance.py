"""Runs every acceptance criterion at its runtime limit and prints one verdict line each."""

from __future__ import annotations

import pytest

from hypermatch.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [num for num, *_ in CRITERIA], ids=[f"criterion_{num}_{name.replace(' ', '_')}" for num, name, *_ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
    assert result.seconds < result.limit, f"took {result.seconds:.2f}s, limit {result.limit}s"
