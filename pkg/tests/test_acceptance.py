"""Acceptance criteria at full sample counts and stated runtime budgets."""

from __future__ import annotations

import pytest

from charp_sing.reproduce import CRITERIA

# filled as criteria run; echoed in the terminal summary by conftest
RESULTS: list = []


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(criterion):
    result = criterion(fast=False)
    RESULTS.append(result)
    print(result.line())
    for line in result.details:
        print("   ", line)
    assert result.ok, result.details
