"""Shared catalog systems and trees for the test suite."""

from fractions import Fraction

import pytest

from src.engines.cb_rank import one_point_compactification_tree, two_limit_tree
from src.engines.dynamics import build_finite_system, build_theorem2_system, build_translation_example


@pytest.fixture
def theorem2_01():
    return build_theorem2_system([0, 1])


@pytest.fixture
def theorem2_three():
    return build_theorem2_system([0, Fraction(1, 2), 1])


@pytest.fixture
def translation():
    return build_translation_example()


@pytest.fixture
def two_cycle():
    return build_finite_system([[0, 1]])


@pytest.fixture
def one_point_tree():
    return one_point_compactification_tree()


@pytest.fixture
def two_limits_tree():
    return two_limit_tree()
