"""One pytest per acceptance criterion; each prints its pass/fail line.

The criterion bodies live in ``amenability.acceptance`` so that the
``amen verify`` subcommand runs exactly the same checks.
"""

import pytest

from amenability import acceptance


@pytest.mark.parametrize("criterion", acceptance.ALL_CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    result = criterion()
    print(acceptance.format_result(result))
    assert result.passed, f"criterion {result.number} failed: {result.detail}"
    assert result.seconds < result.budget, (
        f"criterion {result.number} took {result.seconds:.1f}s "
        f"(budget {result.budget:.0f}s)"
    )
