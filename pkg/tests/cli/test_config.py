"""Test cases for job configuration and geometry shorthands."""

from argparse import Namespace
from pathlib import Path

import numpy as np
import pytest

from src.cli.config import JobConfig, ConfigError, parse_geometry
from src.config.backends import BACKENDS
from src.models.pencil import PencilPoint
from src.utils.errors import ValidationError
from tests.fixtures import write_phase_map


@pytest.mark.cli
@pytest.mark.parametrize('shorthand, n_phases, fractions', [
    ('gen:checkerboard:8', 2, [0.5, 0.5]),
    ('gen:laminate:8:2:0.25', 2, [0.25, 0.75]),
    ('gen:laminate:8', 2, [0.5, 0.5]),
    ('gen:disk:8:2', 2, [55 / 64, 9 / 64]),
    ('gen:disk:8:2:1', 2, [9 / 64, 55 / 64]),
    ('gen:random:8:3:5', 3, None),
])
def test_parse_geometry_shorthands(shorthand, n_phases, fractions):
    """Test that each generator shorthand builds the expected phases and fractions"""
    pm = parse_geometry(shorthand)
    assert pm.grid.d == 2 and pm.grid.n_cells == 8
    assert pm.n_phases == n_phases
    if fractions is not None:
        assert np.allclose(pm.volume_fractions(), fractions)


@pytest.mark.cli
def test_parse_geometry_three_dimensions():
    """Test that shorthands honour the grid dimension"""
    pm = parse_geometry('gen:laminate:4:3:0.5', dim=3)
    assert pm.grid.d == 3


@pytest.mark.cli
@pytest.mark.parametrize('shorthand', ['gen:', 'gen:spiral:8', 'gen:laminate:x', 'gen:checkerboard:8:1',
                                  'gen:laminate:8:1:half'])
def test_parse_geometry_rejects(shorthand):
    """Test that malformed shorthands raise a validation error"""
    with pytest.raises(ValidationError):
        parse_geometry(shorthand)


@pytest.mark.cli
def test_parse_geometry_from_file(tmp_path, laminate8):
    """Test loading a phase map from a JSON file"""
    path = write_phase_map(tmp_path / 'laminate.json', laminate8)
    assert np.array_equal(parse_geometry(str(path)).phases, laminate8.phases)


@pytest.mark.cli
def test_output_format_defaults():
    """Test that sweep defaults to CSV and the other commands to JSON"""
    assert JobConfig('sweep').output_format == 'csv'
    assert JobConfig('effective').output_format == 'json'
    assert JobConfig('sweep', fmt='json').output_format == 'json'


@pytest.mark.cli
def test_validate_accepts_complete_jobs():
    """Test that complete jobs pass validation"""
    JobConfig('effective', geometry='gen:checkerboard:8', z_points=[PencilPoint.of(1.0, 4.0)]).validate()
    JobConfig('verify', geometry='gen:checkerboard:8').validate()
    JobConfig('realize', pencil=Path('pencil.json')).validate()


@pytest.mark.cli
@pytest.mark.parametrize('overrides, message', [
    ({'command': 'plot'}, 'Unknown command'),
    ({'backend': 'multigrid'}, 'Unknown backend'),
    ({'fmt': 'xml'}, 'Unknown format'),
    ({'jobs': 0}, '--jobs'),
    ({'tol': 0.0}, '--tol'),
    ({'geometry': None}, '--geometry'),
    ({'z_points': []}, '--z'),
    ({'z_points': [PencilPoint.of(1.0, 4.0), PencilPoint.of(1.0, -1.0)]}, 'z not in domain D'),
])
def test_validate_rejects(overrides, message):
    """Test that each kind of bad job is reported with a specific message"""
    defaults = {'command': 'effective', 'geometry': 'gen:checkerboard:8', 'z_points': [PencilPoint.of(1.0, 4.0)]}
    cfg = JobConfig(**{**defaults, **overrides})
    with pytest.raises(ConfigError, match=message):
        cfg.validate()


@pytest.mark.cli
def test_realize_needs_pencil():
    """Test that realize without a pencil file is rejected"""
    with pytest.raises(ConfigError, match='--pencil'):
        JobConfig('realize').validate()


@pytest.mark.cli
def test_from_args(monkeypatch):
    """Test building a job from parsed arguments with environment defaults"""
    monkeypatch.setenv('COMPOSITES_JOBS', '3')
    args = Namespace(command='sweep', geometry='gen:laminate:8:1:0.5', z=['1;4', '1,1;2,0'], backend='cg',
                     tol=None, jobs=None, out='out.csv', format=None, pencil=None, seed=7, dim=None, quiet=True)
    cfg = JobConfig.from_args(args)
    assert cfg.z_points == [PencilPoint.of(1.0, 4.0), PencilPoint.of(1 + 1j, 2.0)]
    assert cfg.jobs == 3
    assert cfg.dim == 2
    assert cfg.out == Path('out.csv')
    assert cfg.tol == 1e-8
    assert cfg.seed == 7
    assert cfg.quiet


@pytest.mark.cli
def test_validate_uses_backend_registry(monkeypatch):
    """Test that complex z is rejected up front for a real-only backend and disabled backends are refused"""
    lossy = JobConfig('sweep', geometry='gen:checkerboard:8', z_points=[PencilPoint.of(1 + 1j, 2.0)], backend='cg')
    with pytest.raises(ConfigError, match='needs real positive z'):
        lossy.validate()
    JobConfig('verify', geometry='gen:checkerboard:8', z_points=[PencilPoint.of(1 + 1j, 2.0)], backend='cg').validate()
    monkeypatch.setattr(BACKENDS['cg'], 'enabled', False)
    with pytest.raises(ConfigError, match='disabled'):
        JobConfig('effective', geometry='gen:checkerboard:8', z_points=[PencilPoint.of(1.0, 2.0)],
                  backend='cg').validate()
