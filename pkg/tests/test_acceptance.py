"""One test per acceptance criterion; the per-criterion lines are also printed in the terminal summary."""

import pytest

from rootqca.acceptance import CRITERIA, STRETCH, run_criterion

RESULTS = []


@pytest.mark.parametrize(
    "criterion", [*CRITERIA, STRETCH], ids=[f"{c[0]}-{c[1]}" for c in [*CRITERIA, STRETCH]]
)
def test_criterion(criterion):
    result = run_criterion(criterion)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()
