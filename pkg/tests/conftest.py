import mpmath as mp
import pytest
from hypothesis import settings

from kummerstokes.bigeval import PrecisionPolicy

settings.register_profile("default", deadline=None, max_examples=25)
settings.load_profile("default")


@pytest.fixture
def policy():
    return PrecisionPolicy(30)


@pytest.fixture
def close():
    """Relative closeness at a number of digits, evaluated at high precision."""

    def check(got, want, digits):
        with mp.workdps(digits + 20):
            scale = max(abs(mp.mpf(1) * want), mp.mpf(10) ** -digits)
            return abs(got - want) <= mp.mpf(10) ** (-digits) * scale

    return check
