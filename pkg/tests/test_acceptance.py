"""Acceptance gate: every desk-scale criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v`` (or ``lcsg bench --suite
desk`` for the same checks as a table).  One pass/fail line prints per
criterion.
"""

from __future__ import annotations

import pytest

from lcsgame.acceptance import ALL_CRITERIA


@pytest.mark.parametrize("criterion", ALL_CRITERIA,
                         ids=[fn.__name__ for fn in ALL_CRITERIA])
def test_criterion(criterion):
    result = criterion(seed=0)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] criterion {result.number} ({result.elapsed:.2f}s) "
          f"{result.name}: {result.detail}")
    assert result.passed, f"criterion {result.number}: {result.detail}"
