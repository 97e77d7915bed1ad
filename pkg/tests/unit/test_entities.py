import numpy as np
import pytest

from mimo_pcsim.domain.entities import (
    AttackVector,
    P1Coefficients,
    PowerAllocation,
    ResultRow,
    ScenarioSet,
    Topology,
)
from mimo_pcsim.domain.exceptions import DomainError, PcsimError


def test_attack_vector_constructors():
    """Test the no-attack, uniform and single-user attack vectors."""
    np.testing.assert_array_equal(AttackVector.none(4).alpha, 0.0)
    np.testing.assert_allclose(AttackVector.uniform(4).alpha, 0.25)
    single = AttackVector.single(4, 2)
    np.testing.assert_array_equal(single.alpha, [0.0, 0.0, 1.0, 0.0])
    assert single.users == 4


def test_attack_vector_rejects_infeasible_splits():
    """Test that negative fractions and overspent budgets raise DomainError."""
    with pytest.raises(DomainError):
        AttackVector(np.array([0.5, -0.1]))
    with pytest.raises(DomainError):
        AttackVector(np.array([0.7, 0.7]))
    assert AttackVector(np.array([0.7, 0.7]), budget=2.0).alpha.sum() == pytest.approx(1.4)


def test_attack_vector_clips_rounding_noise():
    """Test that tiny negative rounding errors are clipped to zero."""
    attack = AttackVector(np.array([1.0, -1e-12]))
    assert attack.alpha[1] == 0.0


def test_entity_arrays_are_read_only():
    """Test that entity arrays are frozen copies."""
    source = np.array([0.5, 0.5])
    attack = AttackVector(source)
    source[0] = 0.9
    assert attack.alpha[0] == 0.5
    with pytest.raises(ValueError):
        attack.alpha[0] = 0.1


def test_topology_requires_positive_distances():
    """Test that nonpositive distances are rejected."""
    with pytest.raises(DomainError):
        Topology(z=np.array([10.0, 0.0]), z_J=50.0)
    with pytest.raises(DomainError):
        Topology(z=np.array([10.0]), z_J=-1.0)
    assert Topology(z=np.array([10.0, 20.0]), z_J=5.0).users == 2


def test_power_allocation_feasibility():
    """Test that the feasibility check tolerates rounding only."""
    pa = PowerAllocation(np.array([1.0, 2.0, 3.0]))
    assert pa.total == 6.0
    assert pa.is_feasible(6.0)
    assert not pa.is_feasible(5.9)
    with pytest.raises(DomainError):
        PowerAllocation(np.array([1.0, -1.0]))


def test_p1_coefficients_validation():
    """Test that b must be strictly positive."""
    with pytest.raises(DomainError):
        P1Coefficients(a=np.array([1.0]), b=np.array([0.0]))
    with pytest.raises(DomainError):
        P1Coefficients(a=np.array([1.0, 2.0]), b=np.array([1.0]))


def test_scenario_set_defaults_to_uniform_weights():
    """Test equiprobable scenarios and antenna restriction."""
    gains = np.ones((5, 3, 2), dtype=np.complex128)
    scenarios = ScenarioSet(gains)
    assert scenarios.size == 5
    assert scenarios.antennas == 3
    np.testing.assert_allclose(scenarios.weights, 0.2)
    assert scenarios.first_antennas(1).antennas == 1
    with pytest.raises(DomainError):
        ScenarioSet(np.ones((5, 3)))


def test_result_row_validation():
    """Test that aggregates need n > 0 and stderr >= 0."""
    ResultRow(1.0, "noPC", "sum_rate", 10.0, 0.0, 1)
    with pytest.raises(DomainError):
        ResultRow(1.0, "noPC", "sum_rate", 10.0, -1.0, 1)
    with pytest.raises(DomainError):
        ResultRow(1.0, "noPC", "sum_rate", 10.0, 0.0, 0)


def test_domain_errors_are_value_errors():
    """Test the exception hierarchy used by callers."""
    assert issubclass(DomainError, ValueError)
    assert issubclass(DomainError, PcsimError)
