"""Test cases for the pencil over a subspace collection, the domain D and Wiener bounds."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.models.operator import ScalarField
from src.models.pencil import PencilPoint
from src.multiphase.pencil import (
    in_domain_D, domain_angle, pencil_hypotheses, pencil_at, effective_map, bess_pencil,
    schur_of_pencil, wiener_bounds, multiphase_monotone, DomainError, PencilLengthError,
)
from src.operators.core import loewner_leq, min_eigenvalue
from src.operators.sampling import random_collection, random_point_in_domain, random_positive_point
from src.utils.errors import ValidationError


@pytest.mark.unit
@pytest.mark.parametrize('z, inside', [
    ((1.0, 4.0), True),
    ((1j, 1.0), True),
    ((1.0, -1.0), False),
    ((1.0, 1j, -1.0), False),
    ((1.0, 0.0), False),
    ((1 + 1j, 1 - 1j), True),
    ((-1.0, -2.0, -1j + -1.0), True),
    ((np.exp(0.1j), np.exp(0.1j + 1j * np.pi)), False),
])
def test_domain_membership(z, inside):
    """Test membership, including arguments spanning exactly π on the boundary"""
    assert in_domain_D(PencilPoint(z)) is inside


@pytest.mark.unit
def test_domain_angle_rotates_into_right_half_plane(rng):
    """Test that the domain angle turns every component into the right half-plane"""
    for _ in range(50):
        z = random_point_in_domain(rng, int(rng.integers(1, 6)))
        theta = domain_angle(z)
        assert theta is not None
        assert all((np.exp(1j * theta) * v).real > 0 for v in z.z)
    assert domain_angle(PencilPoint.of(1.0, -1.0)) is None


@pytest.mark.property
@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6), theta=st.floats(0.0, 2.0 * np.pi))
def test_domain_invariant_under_rotation_and_inversion(seed, n, theta):
    """Test that z ∈ D implies e^{iθ}z ∈ D and z⁻¹ ∈ D"""
    z = random_point_in_domain(np.random.default_rng(seed), n)
    assert in_domain_D(z)
    assert in_domain_D(z.scaled(np.exp(1j * theta)))
    assert in_domain_D(z.inverse())


@pytest.mark.property
@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), theta=st.floats(0.0, 2.0 * np.pi))
def test_complement_of_domain_invariant_under_rotation(seed, theta):
    """Test that arguments spread evenly around the circle stay outside D after any rotation"""
    rng = np.random.default_rng(seed)
    args = 2.0 * np.pi * np.arange(3) / 3.0 + rng.uniform(-0.2, 0.2, size=3)
    z = PencilPoint(tuple(rng.uniform(0.5, 2.0, size=3) * np.exp(1j * args)))
    assert not in_domain_D(z)
    assert not in_domain_D(z.scaled(np.exp(1j * theta)))
    assert not in_domain_D(z.inverse())


@pytest.mark.unit
def test_pencil_hypotheses():
    """Test the hypotheses derived from z alone"""
    positive = pencil_hypotheses(PencilPoint.of(1.0, 4.0))
    assert (positive.h0, positive.h1, positive.h2) == (True, True, True)
    assert positive.lm == pytest.approx(0.0)
    lossy = pencil_hypotheses(PencilPoint.of(1 + 1j, 2.0))
    assert (lossy.h0, lossy.h1, lossy.h2) == (True, False, False)
    outside = pencil_hypotheses(PencilPoint.of(1.0, -1.0))
    assert not outside.h0 and outside.lm is None


@pytest.mark.unit
def test_pencil_at_ones_is_identity(rng):
    """Test L(1, …, 1) = I"""
    c = random_collection(rng, 9, 3)
    assert np.allclose(pencil_at(c, PencilPoint.of(1.0, 1.0, 1.0)), np.eye(9))


@pytest.mark.unit
def test_pencil_at_length_mismatch(rng):
    """Test that a point of the wrong length is refused"""
    c = random_collection(rng, 6, 2)
    with pytest.raises(PencilLengthError):
        pencil_at(c, PencilPoint.of(1.0, 2.0, 3.0))


@pytest.mark.unit
def test_effective_map_rejects_outside_domain(rng):
    """Test that the effective map is refused outside D"""
    c = random_collection(rng, 6, 2)
    with pytest.raises(DomainError):
        effective_map(c, PencilPoint.of(1.0, -1.0))


@pytest.mark.unit
def test_bess_pencil_is_normalized(rng):
    """Test that the compressed pencil is PSD and sums to the identity"""
    c = random_collection(rng, 10, 3, ScalarField.COMPLEX)
    pencil = bess_pencil(c)
    pencil.validate()
    assert pencil.split.sizes == c.space.dims[:2]


@pytest.mark.property
def test_bess_pencil_reproduces_effective_map(rng):
    """Test the Schur complement of the compressed pencil against L*(z) on random points of D"""
    for _ in range(50):
        n = int(rng.integers(1, 5))
        dim = int(rng.integers(max(n, 2), 41))
        field = ScalarField.COMPLEX if rng.random() < 0.5 else ScalarField.REAL
        c = random_collection(rng, dim, n, field)
        pencil = bess_pencil(c)
        for _ in range(10):
            z = random_point_in_domain(rng, n)
            f = schur_of_pencil(pencil, z)
            l_star = effective_map(c, z)
            assert np.linalg.norm(f - l_star) <= 1e-8 * np.linalg.norm(l_star)


@pytest.mark.property
def test_homogeneity(rng):
    """Test L*(λz) = λL*(z)"""
    for _ in range(20):
        n = int(rng.integers(1, 4))
        c = random_collection(rng, int(rng.integers(4, 20)), n, ScalarField.COMPLEX)
        z = random_point_in_domain(rng, n)
        factor = rng.uniform(0.2, 5.0) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        l_star = effective_map(c, z)
        scaled = effective_map(c, z.scaled(factor))
        assert np.linalg.norm(scaled - factor * l_star) <= 1e-9 * abs(factor) * np.linalg.norm(l_star)


@pytest.mark.property
def test_coercivity_on_domain(rng):
    """Test Re(e^{iθ}L(z)) ≥ minᵢ Re(e^{iθ}zᵢ) with θ from domain_angle"""
    for _ in range(20):
        c = random_collection(rng, 8, 3, ScalarField.COMPLEX)
        z = random_point_in_domain(rng, 3)
        theta = domain_angle(z)
        margin = min((np.exp(1j * theta) * v).real for v in z.z)
        assert min_eigenvalue(np.exp(1j * theta) * pencil_at(c, z)) >= margin - 1e-10


@pytest.mark.property
def test_wiener_bounds(rng):
    """Test harmonic ⪯ L*(z) ⪯ arithmetic for positive z"""
    for _ in range(20):
        c = random_collection(rng, int(rng.integers(4, 20)), 3)
        z = random_positive_point(rng, 3)
        lower, upper = wiener_bounds(c, z)
        l_star = effective_map(c, z)
        assert loewner_leq(lower, l_star, 1e-9)
        assert loewner_leq(l_star, upper, 1e-9)


@pytest.mark.unit
def test_wiener_bounds_need_positive_z(rng):
    """Test that the bounds are refused for complex z"""
    c = random_collection(rng, 6, 2)
    with pytest.raises(ValidationError):
        wiener_bounds(c, PencilPoint.of(1.0, 1j))


@pytest.mark.property
def test_multiphase_monotone(rng):
    """Test that L* is monotone for ordered positive points"""
    for _ in range(20):
        c = random_collection(rng, int(rng.integers(4, 16)), 2)
        z = random_positive_point(rng, 2)
        w = PencilPoint(tuple(v + rng.uniform(0.0, 2.0) for v in z.z))
        assert multiphase_monotone(c, z, w)


@pytest.mark.unit
def test_multiphase_monotone_needs_order(rng):
    """Test that unordered points are refused"""
    c = random_collection(rng, 6, 2)
    with pytest.raises(ValidationError):
        multiphase_monotone(c, PencilPoint.of(2.0, 1.0), PencilPoint.of(1.0, 1.0))
