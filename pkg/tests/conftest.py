import math

import pytest
from hypothesis import strategies as st

from torus_extremal.variety import TorusParams


def complexes(bound=50.0):
    f = st.floats(min_value=-bound, max_value=bound, allow_nan=False, allow_infinity=False)
    return st.builds(complex, f, f)


def radii():
    """Torus radii 0 < r < R, kept away from the degenerate horn torus."""
    return st.tuples(
        st.floats(min_value=0.1, max_value=5.0), st.floats(min_value=0.05, max_value=0.95)
    ).map(lambda t: TorusParams(r=t[0] * t[1], R=t[0]))


@pytest.fixture
def p21():
    return TorusParams(r=1.0, R=2.0)


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


LOG_3_2R2 = math.log(3 + 2 * math.sqrt(2))


#: (criterion number, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE = []


def record(number, passed, detail):
    ACCEPTANCE.append((number, bool(passed), detail))
    print(f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}")
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}")
