import numpy as np
import pytest

from app.core.errors import InputError
from app.models.symplectic import MetricPair, SymplecticForm
from app.services import symplin
from app.utils.linalg import random_compatible_structure, random_symplectic, standard_complex_structure

OMEGA2 = SymplecticForm.standard(2)
J_STD = standard_complex_structure(2)
J_SQUEEZED = np.array([[0.0, -4.0], [0.25, 0.0]])


def test_standard_pair_is_compatible():
    result = symplin.check_compatible(OMEGA2, J_STD)
    assert result["compatible"]
    assert np.allclose(result["g"], np.eye(2))


def test_anti_compatible_structure_detected():
    assert not symplin.check_compatible(OMEGA2, -J_STD)["compatible"]


def test_interpolation_midpoint_by_hand():
    path = symplin.interpolate_cs(OMEGA2, J_STD, J_SQUEEZED, [0.0, 0.5, 1.0])
    assert np.allclose(path[0], J_STD)
    assert np.allclose(path[1], [[0.0, -2.0], [0.5, 0.0]])
    assert np.allclose(path[2], J_SQUEEZED)


def test_inverse_sqrt_series_matches_spectral_value():
    K = 0.5 * J_STD + 0.5 * J_SQUEEZED
    assert np.allclose(np.eye(2) + K @ K, -9 / 16 * np.eye(2))
    assert symplin.inverse_sqrt_series_check(K) < 1e-10


def test_interpolation_report_on_random_structures(rng):
    omega = SymplecticForm.standard(6)
    J0 = random_compatible_structure(omega.matrix, rng)
    J1 = random_compatible_structure(omega.matrix, rng)
    report = symplin.interpolation_report(omega, J0, J1, np.linspace(0, 1, 11))
    assert report["square_residual"] < 1e-10
    assert report["endpoint_residual"] < 1e-10
    assert report["compatible_everywhere"]


def test_metric_isometry_by_hand():
    pair = MetricPair(np.eye(2), np.diag([4.0, 1.0]))
    A = symplin.metric_isometry(pair)
    assert np.allclose(A, np.diag([0.5, 1.0]))
    assert symplin.isometry_residuals(pair, A)["pullback"] < 1e-12


def test_metric_pair_rejects_indefinite():
    with pytest.raises(InputError):
        MetricPair(np.eye(2), np.diag([1.0, -1.0]))


def test_polar_retraction_endpoints(rng):
    omega = SymplecticForm.standard(4)
    A = random_symplectic(omega.matrix, rng)
    J = standard_complex_structure(4)
    path = symplin.polar_retraction(A, omega, J, np.linspace(0, 1, 6))
    report = symplin.retraction_report(path, omega, J)
    assert report["symplectic_residual"] < 1e-9
    assert report["start_orthogonal"] < 1e-9
    assert report["endpoint_residual"] < 1e-9


def test_polar_retraction_rejects_non_symplectic():
    with pytest.raises(InputError):
        symplin.polar_retraction(2 * np.eye(2), OMEGA2, J_STD, [0.0, 1.0])


def test_hs_equivalence_identity(rng):
    omega = SymplecticForm.standard(4)
    J0 = random_compatible_structure(omega.matrix, rng)
    J1 = random_compatible_structure(omega.matrix, rng)
    assert symplin.hs_equivalence_identity(omega, J0, J1)["residual"] < 1e-10


def test_restricted_norm_of_complex_structure():
    result = symplin.restricted_norm(J_STD, J_STD, np.eye(2))
    assert result["op_norm"] == pytest.approx(1.0)
    assert result["hs_commutator"] == pytest.approx(0.0, abs=1e-14)
