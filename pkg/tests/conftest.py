import pytest

from dynoscale.systems import binary_exp_shift, doubling_grid


@pytest.fixture(scope="session")
def shift12():
    return binary_exp_shift(depth=12)


@pytest.fixture(scope="session")
def shift6():
    return binary_exp_shift(depth=6, horizon_cap=5)


@pytest.fixture(scope="session")
def doubling64():
    return doubling_grid(64, horizon_cap=8)
