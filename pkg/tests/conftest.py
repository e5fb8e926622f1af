from __future__ import annotations

import sys
from fractions import Fraction

import pytest

from qsuper.ratfunc import RatFunc
from qsuper.series import SeriesSpace


@pytest.fixture
def q():
    return RatFunc.symbol("q")


@pytest.fixture
def q_num():
    return RatFunc.const(Fraction(7, 5))


@pytest.fixture
def zspace():
    return SeriesSpace(("z",), (6,))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
