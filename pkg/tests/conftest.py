import numpy as np
import pytest
from hypothesis import settings

from freekernel.generators import default_rng

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return default_rng(20240611)


def toeplitz_half(size, r=0.5):
    idx = np.arange(size)
    return r ** np.abs(idx[:, None] - idx[None, :]).astype(float)
