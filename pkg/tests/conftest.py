from pathlib import Path

import numpy as np
import pytest

from meshcurv.bench.content import PolySurface
from meshcurv.shapes import icosphere


@pytest.fixture(scope='session')
def test_files_dir():
    return Path(__file__).parent.parent.joinpath('data', 'test_files')


@pytest.fixture(scope='session')
def unit_sphere():
    return icosphere(level=3)


@pytest.fixture(scope='session')
def fine_unit_sphere():
    return icosphere(level=4)


@pytest.fixture
def paraboloid():
    # z = u^2 + v^2
    return PolySurface([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20210405)
