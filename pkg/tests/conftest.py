import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_shape(rng, min_order=3, max_order=5, max_dim=4):
    order = int(rng.integers(min_order, max_order + 1))
    return tuple(int(d) for d in rng.integers(1, max_dim + 1, size=order))
