from __future__ import annotations

import pytest

from mdpconv.convmodel import CodeDescriptor
from mdpconv.fieldcore import build_field, field_build


@pytest.fixture(scope="session")
def f5():
    return field_build(5)


@pytest.fixture(scope="session")
def f49_v2_3():
    """F_49 = F_7[v]/(v^2 - 3), the presentation used by the worked examples."""
    return build_field(7, 1, 2, None, (4, 0, 1))


@pytest.fixture(scope="session")
def example_code(f5):
    """G(D) = (1 + D, 2 + D, 3 + D) over F_5."""
    return CodeDescriptor.from_coeffs(f5, [[[1, 2, 3]], [[1, 1, 1]]])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(results):
        parts = results[criterion]
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {criterion}: {status}  {detail}")
