import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from hardylab.series import PowerSeries

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False,
                   allow_subnormal=False)


@st.composite
def series(draw, min_degree=0, max_degree=12):
    d = draw(st.integers(min_degree, max_degree))
    re = draw(st.lists(finite, min_size=d + 1, max_size=d + 1))
    im = draw(st.lists(finite, min_size=d + 1, max_size=d + 1))
    return PowerSeries(np.array(re) + 1j * np.array(im))


def rand_series(rng, degree, scale=1.0):
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return PowerSeries(scale * c)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
