import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from jordan import Poly, Scalar, SquareMatrix

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

I_ = Scalar.gaussian(0, 1)
x = Poly.x()
EXAMPLE_T = SquareMatrix([[1, 1, 0, 0], [-1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 0, 2]])


@pytest.fixture
def example_T():
    return EXAMPLE_T


@pytest.fixture
def example_p():
    return (x**2 - 2 * x + 2) * (x - 2) ** 2


def F(a, b=1):
    return Fraction(a, b)
