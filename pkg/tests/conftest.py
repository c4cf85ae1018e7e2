import numpy as np
import pytest

from app.data.utils import make_dataset
from tests.helpers import gaussian_quantiles, uniform_blocks


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def uniform_grid():
    return make_dataset(np.linspace(0.0, 1.0, 1000))


@pytest.fixture
def gaussian_grid():
    return make_dataset(gaussian_quantiles(1000))


@pytest.fixture
def d14():
    """Форма D14: U(-1, 3) из 300 точек и U(8, 10) из 200 точек."""
    return uniform_blocks((-1.0, 3.0, 300), (8.0, 10.0, 200))


@pytest.fixture
def d18():
    """Форма D18: U(-2, 0, 200), U(1, 5, 300), U(6, 7, 450)."""
    return uniform_blocks((-2.0, 0.0, 200), (1.0, 5.0, 300), (6.0, 7.0, 450))
