from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from loophom.corpus import H4, X3, Y2
from loophom.manifold import present
from loophom.series import Series

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def x3():
    return present(X3)


@pytest.fixture(scope="session")
def y2():
    return present(Y2)


@pytest.fixture(scope="session")
def h4():
    return present(H4)


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def unit_series(draw, order: int | None = None):
    """Series with constant term 1 and small rational coefficients."""
    n = draw(st.integers(0, 10)) if order is None else order
    tail = draw(st.lists(fractions, min_size=n, max_size=n))
    return Series((Fraction(1), *tail))


@st.composite
def any_series(draw, order: int):
    return Series(tuple(draw(st.lists(fractions, min_size=order + 1, max_size=order + 1))))
