import numpy as np
import pytest

from weyllab import HomogeneousSymbol


@pytest.fixture
def circle():
    return HomogeneousSymbol.polynomial({(2, 0): 1.0, (0, 2): 1.0})


@pytest.fixture
def quartic():
    return HomogeneousSymbol.polynomial({(4, 0): 1.0, (0, 4): 1.0})


@pytest.fixture
def line():
    return HomogeneousSymbol.polynomial({(2,): 1.0})


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)
