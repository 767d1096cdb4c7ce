import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _restore_precision():
    prec = mp.prec
    yield
    mp.prec = prec


def hp(text):
    """Decimal literal rounded at 600 bits, so test inputs are not binary floats."""
    with mp.workprec(600):
        return mp.mpf(text)
