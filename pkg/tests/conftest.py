"""Shared pytest fixtures."""

import os
import pytest
import numpy as np

from src.config.settings import SolverConfig
from src.models.grid import GridSpec
from src.conductivity.geometry import laminate, checkerboard
from tests.fixtures import (
    create_three_axis_problem, create_harmonic_mean_pencil, create_identity_split_pencil,
)


@pytest.fixture(autouse=True)
def test_env():
    """Keep solver settings independent of the developer's environment."""
    saved = {k: os.environ.pop(k) for k in list(os.environ) if k.startswith('COMPOSITES_')}
    os.environ['TESTING'] = 'true'
    yield
    os.environ.pop('TESTING', None)
    os.environ.update(saved)


@pytest.fixture
def rng():
    """Seeded generator so every random instance is reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def solver_config():
    return SolverConfig()


@pytest.fixture
def three_axis_problem():
    """L = [[2,1,0],[1,3,0],[0,0,5]] on U = span e1, E = span e2, J = span e3."""
    return create_three_axis_problem()


@pytest.fixture
def harmonic_pencil():
    """Two rank-one coefficients whose Schur complement is 2z1z2/(z1 + z2)."""
    return create_harmonic_mean_pencil()


@pytest.fixture
def identity_split_pencil():
    return create_identity_split_pencil()


@pytest.fixture
def grid8():
    return GridSpec(2, 8)


@pytest.fixture
def laminate8(grid8):
    """Half-half laminate with slabs normal to the first axis."""
    return laminate(grid8, axis=1, fraction=0.5)


@pytest.fixture
def checkerboard8(grid8):
    return checkerboard(grid8)
