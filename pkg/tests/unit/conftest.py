"""Unit test fixtures: preset schedules and their operators"""

import pytest

from src.operator_t import OperatorT
from src.schedule import canonical, small_preset


@pytest.fixture(scope="session")
def small2():
    """SMALL-2 with blocks 0..5 (b_6 = 13664)"""
    return small_preset("small-2", 5)


@pytest.fixture(scope="session")
def small2_long():
    """SMALL-2 with blocks 0..8, enough for witnesses that climb to block 7"""
    return small_preset("small-2", 8)


@pytest.fixture(scope="session")
def small41():
    return small_preset("small-41", 4)


@pytest.fixture(scope="session")
def canon():
    return canonical(3)


@pytest.fixture
def T(small2):
    """Fresh operator (empty memo) on SMALL-2"""
    return OperatorT(small2)
