"""Test cases for phase map generators."""

import numpy as np
import pytest

from src.conductivity.geometry import laminate, checkerboard, disk, random_phases, make_geometry, GeometryError
from src.models.grid import GridSpec, PhaseMap, EmptyPhaseError


@pytest.mark.unit
def test_laminate(grid8):
    """Test layer placement and volume fractions of laminates"""
    pm = laminate(grid8, axis=1, fraction=0.25)
    assert np.allclose(pm.volume_fractions(), [0.25, 0.75])
    assert (pm.phases[:2] == 1).all() and (pm.phases[2:] == 2).all()
    along = laminate(grid8, axis=2, fraction=0.5)
    assert (along.phases[:, :4] == 1).all()


@pytest.mark.unit
@pytest.mark.parametrize('params', [{'axis': 3}, {'fraction': 0.3}, {'fraction': 1.0}])
def test_laminate_rejects(grid8, params):
    """Test that bad laminate parameters are refused"""
    with pytest.raises(GeometryError):
        laminate(grid8, **params)


@pytest.mark.unit
def test_checkerboard(checkerboard8):
    """Test the checkerboard blocks and that odd or 3D grids are refused"""
    assert np.allclose(checkerboard8.volume_fractions(), [0.5, 0.5])
    assert checkerboard8.phases[0, 0] == 1
    assert checkerboard8.phases[0, 7] == 2
    assert checkerboard8.phases[7, 7] == 1
    with pytest.raises(GeometryError):
        checkerboard(GridSpec(2, 5))
    with pytest.raises(GeometryError):
        checkerboard(GridSpec(3, 4))


@pytest.mark.unit
def test_disk(grid8):
    """Test the cell count of a disk inclusion"""
    pm = disk(grid8, radius=2.0)
    assert int((pm.phases == 2).sum()) == 9
    assert pm.phases[4, 4] == 2
    swapped = disk(grid8, radius=2.0, phase=1)
    assert int((swapped.phases == 1).sum()) == 9


@pytest.mark.unit
def test_disk_wraps_periodically(grid8):
    """Test that a disk centred at a corner wraps around the cell"""
    pm = disk(grid8, radius=1.5, center=(0.0, 0.0))
    assert pm.phases[0, 0] == 2 and pm.phases[7, 7] == 2 and pm.phases[0, 7] == 2


@pytest.mark.unit
def test_empty_disk_rejected(grid8):
    """Test that a disk covering no cell is refused"""
    with pytest.raises(EmptyPhaseError):
        disk(grid8, radius=0.0)


@pytest.mark.unit
def test_random_phases_reproducible(grid8):
    """Test that a seed fixes the random phase map and every phase is present"""
    a = random_phases(grid8, 3, seed=7)
    b = random_phases(grid8, 3, seed=7)
    assert np.array_equal(a.phases, b.phases)
    assert set(np.unique(a.phases)) == {1, 2, 3}
    with pytest.raises(GeometryError):
        random_phases(GridSpec(2, 2), 5, seed=0)


@pytest.mark.unit
def test_make_geometry(grid8):
    """Test generator lookup and that unknown names or parameters are refused"""
    pm = make_geometry('laminate', grid8, axis=2, fraction=0.5)
    assert isinstance(pm, PhaseMap)
    with pytest.raises(GeometryError):
        make_geometry('spiral', grid8)
    with pytest.raises(GeometryError):
        make_geometry('checkerboard', grid8, radius=2.0)
