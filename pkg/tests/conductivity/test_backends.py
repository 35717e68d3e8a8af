"""Test cases for the effective conductivity backends."""

import numpy as np
import pytest

from src.config.backends import BACKENDS, disable_backend, enable_backend, get_enabled_backends
from src.config.settings import SolverConfig
from src.conductivity.backends.base import BackendError, BaseBackend
from src.conductivity.backends.cg import CGBackend, CGConvergenceError, cg_cell_solve
from src.conductivity.backends.dense import DenseBackend, average_ohm_residual
from src.conductivity.backends.manager import BackendManager
from src.conductivity.effective import effective_conductivity, phase_collection
from src.conductivity.geometry import laminate, checkerboard, random_phases
from src.conductivity.hodge import hodge_projections
from src.models.grid import GridSpec
from src.models.pencil import PencilPoint


@pytest.mark.unit
def test_manager_resolves_backends(solver_config):
    """Test that the manager builds each backend from its dotted path"""
    assert isinstance(BackendManager.initialize_backend('dense', solver_config), DenseBackend)
    cg = BackendManager.initialize_backend('cg', solver_config)
    assert isinstance(cg, CGBackend)
    assert cg.name() == 'cg'
    assert cg.config is solver_config


@pytest.mark.unit
def test_manager_rejects_unknown_and_disabled():
    """Test that unknown and disabled backends are refused"""
    with pytest.raises(BackendError):
        BackendManager.initialize_backend('multigrid')
    disable_backend('cg')
    try:
        assert 'cg' not in get_enabled_backends()
        with pytest.raises(BackendError):
            BackendManager.initialize_backend('cg')
    finally:
        enable_backend('cg')
    assert BACKENDS['cg'].enabled


@pytest.mark.unit
def test_base_backend_is_abstract():
    """Test that the base backend must be subclassed"""
    backend = BaseBackend()
    with pytest.raises(NotImplementedError):
        backend.name()


@pytest.mark.unit
def test_laminate_cg_closed_form(laminate8):
    """Test the cg backend against the laminate closed form"""
    tensor = effective_conductivity(laminate8, PencilPoint.of(1.0, 4.0), backend='cg')
    assert np.allclose(tensor.sigma, np.diag([1.6, 2.5]), rtol=1e-7, atol=0.0)
    assert tensor.backend == 'cg'
    assert tensor.iterations <= 2 * 5 * 63


@pytest.mark.unit
@pytest.mark.parametrize('make, z', [
    (lambda g: laminate(g, axis=2, fraction=0.25), (1.0, 4.0)),
    (lambda g: checkerboard(g), (1.0, 4.0)),
    (lambda g: checkerboard(g), (1.0, 16.0)),
    (lambda g: random_phases(g, 3, seed=9), (1.0, 5.0, 0.5)),
    (lambda g: random_phases(g, 2, seed=9), (1.0, 100.0)),
])
def test_dense_and_cg_agree(grid8, make, z):
    """Test that dense and cg tensors agree within the iteration cap"""
    pm = make(grid8)
    point = PencilPoint(z)
    dense = effective_conductivity(pm, point, backend='dense').sigma
    iterative = effective_conductivity(pm, point, backend='cg')
    assert np.linalg.norm(iterative.sigma - dense) <= 1e-7 * np.linalg.norm(dense)
    assert iterative.iterations <= grid8.d * 5 * (grid8.n_points - 1)


@pytest.mark.unit
def test_dense_and_cg_agree_three_dimensions():
    """Test that dense and cg tensors agree on a 3D grid"""
    pm = random_phases(GridSpec(3, 4), 2, seed=1)
    point = PencilPoint.of(1.0, 3.0)
    dense = effective_conductivity(pm, point, backend='dense').sigma
    iterative = effective_conductivity(pm, point, backend='cg').sigma
    assert np.linalg.norm(iterative - dense) <= 1e-7 * np.linalg.norm(dense)


@pytest.mark.unit
def test_cg_rejects_complex_z(laminate8):
    """Test that the cg backend refuses complex z"""
    with pytest.raises(BackendError):
        effective_conductivity(laminate8, PencilPoint.of(1.0 + 1.0j, 2.0), backend='cg')
    assert not CGBackend().supports(PencilPoint.of(1.0 + 1.0j, 2.0))


@pytest.mark.unit
def test_cg_iteration_cap(grid8):
    """Test that hitting the iteration cap raises with the achieved residual"""
    pm = random_phases(grid8, 3, seed=9)
    hodge = hodge_projections(grid8)
    with pytest.raises(CGConvergenceError) as info:
        cg_cell_solve(pm, hodge, PencilPoint.of(1.0, 50.0, 0.1), np.array([1.0, 0.0]), tol=1e-12, max_iter=1)
    assert info.value.iterations == 1
    assert info.value.residual > 1e-12


@pytest.mark.unit
def test_cg_solution_lies_in_e(grid8):
    """Test that the cg field stays in the gradient space"""
    pm = random_phases(grid8, 2, seed=6)
    hodge = hodge_projections(grid8)
    solution = cg_cell_solve(pm, hodge, PencilPoint.of(1.0, 4.0), [0.0, 1.0])
    assert np.allclose(hodge.apply(1, solution.E), solution.E, atol=1e-12)
    assert solution.residual <= 1e-9


@pytest.mark.unit
def test_average_ohm_residual(grid8):
    """Test that the averaged Ohm's law holds for σ* and fails for 2σ*"""
    pm = random_phases(grid8, 2, seed=8)
    z = PencilPoint.of(1.0 + 0.5j, 2.0)
    collection = phase_collection(pm, hodge_projections(grid8))
    sigma = effective_conductivity(pm, z).sigma
    assert average_ohm_residual(pm, collection, z, sigma) <= 1e-10
    assert average_ohm_residual(pm, collection, z, 2.0 * sigma) >= 0.49


@pytest.mark.unit
def test_iteration_cap_from_config():
    """Test that the iteration cap scales with the factor from the solver config"""
    assert SolverConfig(cg_max_iter_factor=3).max_iterations(10) == 30


@pytest.mark.unit
def test_complex_support_comes_from_config(monkeypatch):
    """Test that the registry's complex_support flag decides which points a backend accepts"""
    lossy = PencilPoint.of(1.0 + 1.0j, 2.0)
    assert BackendManager.initialize_backend('dense').supports(lossy)
    assert not BackendManager.initialize_backend('cg').supports(lossy)
    assert BackendManager.initialize_backend('cg').supports(PencilPoint.of(1.0, 2.0))
    monkeypatch.setattr(BACKENDS['dense'], 'complex_support', False)
    dense = BackendManager.initialize_backend('dense')
    assert not dense.supports(lossy)
    assert dense.supports(PencilPoint.of(1.0, 2.0))
