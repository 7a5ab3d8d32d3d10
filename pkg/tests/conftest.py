import pytest

from atmc.config import default_config

# The step-length diffusion coefficient has no literature default; this is
# the documented test value used throughout the suite.
TEST_D = 1e-3


def make_config(**overrides):
    d = overrides.pop("diffusion_coeff", TEST_D)
    return default_config(d, **overrides)


@pytest.fixture
def base_config():
    return make_config()
