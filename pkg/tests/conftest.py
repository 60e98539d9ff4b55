import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_spinors(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)
