"""
Symplectic linear algebra: compatible complex structures, metric isometries,
the straight-line interpolation J_t = K_t (-K_t^2)^{-1/2}, restricted norms
and the polar retraction of Sp onto U_J.

Square roots are taken in a metric-orthonormal frame, where the operators
become symmetric, and mapped back.
"""
import logging
from typing import Dict, List, Sequence

import numpy as np
from scipy.linalg import polar

from app.core.config import settings
from app.core.errors import InputError
from app.models.symplectic import MetricPair, RetractionPath, SymplecticForm
from app.utils.linalg import from_metric_frame, metric_factor, symmetric_function, to_metric_frame

logger = logging.getLogger(__name__)


def _omega_matrix(omega) -> np.ndarray:
    return omega.matrix if isinstance(omega, SymplecticForm) else np.asarray(omega, dtype=float)


def _require_complex_structure(J: np.ndarray) -> None:
    residual = np.linalg.norm(J @ J + np.eye(J.shape[0]))
    if residual > settings.SPECTRAL_TOL * max(1.0, np.linalg.norm(J) ** 2):
        raise InputError(f"J^2 != -I (residual {residual:.3e})")


def check_compatible(omega, J) -> Dict[str, object]:
    """g(v, w) = omega(v, J w); compatible iff g is symmetric positive definite."""
    Omega = _omega_matrix(omega)
    J = np.asarray(J, dtype=float)
    if J.shape != Omega.shape:
        raise InputError(f"shape mismatch: Omega {Omega.shape}, J {J.shape}")
    _require_complex_structure(J)
    g = Omega @ J
    symmetric = np.abs(g - g.T).max() <= settings.SPECTRAL_TOL * max(1.0, np.abs(g).max())
    positive = bool(np.linalg.eigvalsh((g + g.T) / 2).min() > 0)
    return {"compatible": bool(symmetric and positive), "g": g}


def metric_isometry(pair: MetricPair) -> np.ndarray:
    """A = C^{1/2}, C = g1^{-1} g0, so that g1(Av, Aw) = g0(v, w)."""
    L = metric_factor(pair.g1)
    # C = L^{-T} M L^T with M = L^{-1} g0 L^{-T} symmetric
    M = to_metric_frame(np.linalg.solve(pair.g1, pair.g0), L)
    spectrum = np.linalg.eigvalsh((M + M.T) / 2)
    if spectrum.min() <= 0:
        raise InputError(f"C = g1^-1 g0 has non-positive spectrum (min {spectrum.min():.3e})")
    return from_metric_frame(symmetric_function(M, np.sqrt), L)


def isometry_residuals(pair: MetricPair, A: np.ndarray) -> Dict[str, float]:
    C = np.linalg.solve(pair.g1, pair.g0)
    return {
        "pullback": float(np.abs(A.T @ pair.g1 @ A - pair.g0).max()),
        "c_symmetry": float(np.abs(pair.g1 @ C - (pair.g1 @ C).T).max()),
        "min_eigenvalue": float(np.linalg.eigvals(A).real.min()),
    }


def _interpolation_step(Omega: np.ndarray, J0: np.ndarray, J1: np.ndarray, t: float) -> Dict[str, np.ndarray]:
    K = (1 - t) * J0 + t * J1
    G = Omega @ K
    L = metric_factor(G)
    # K = L^{-T} M L^T with M = L^T Omega^{-1} L antisymmetric, -K^2 ~ M^T M
    M = L.T @ np.linalg.solve(Omega, L)
    inv_sqrt = from_metric_frame(symmetric_function(M.T @ M, lambda x: 1.0 / np.sqrt(x)), L)
    return {"K": K, "J": K @ inv_sqrt, "inv_sqrt": inv_sqrt}


def _check_spectrum(K: np.ndarray, t: float, tol: float) -> Dict[str, float]:
    eigenvalues = np.linalg.eigvals(K)
    scale = np.linalg.norm(K, 2)
    worst_real = float(np.abs(eigenvalues.real).max())
    smallest = float(np.abs(eigenvalues).min())
    if worst_real > tol * scale or smallest <= tol:
        raise InputError(
            f"spectrum of K_t at t={t} is not purely imaginary and nonzero "
            f"(max |Re| {worst_real:.3e}, min |lambda| {smallest:.3e})"
        )
    return {"max_real": worst_real / scale, "min_modulus": smallest}


def interpolate_cs(omega, J0, J1, t_grid: Sequence[float], tol: float = None) -> List[np.ndarray]:
    """J_t = K_t (-K_t^2)^{-1/2} along K_t = (1 - t) J0 + t J1."""
    tol = tol or settings.SPECTRAL_TOL
    Omega = _omega_matrix(omega)
    J0, J1 = np.asarray(J0, dtype=float), np.asarray(J1, dtype=float)
    for name, J in (("J0", J0), ("J1", J1)):
        if not check_compatible(Omega, J)["compatible"]:
            raise InputError(f"{name} is not compatible with omega")
    path = []
    for t in t_grid:
        step = _interpolation_step(Omega, J0, J1, float(t))
        _check_spectrum(step["K"], t, tol)
        path.append(step["J"])
    return path


def interpolation_report(omega, J0, J1, t_grid: Sequence[float]) -> Dict[str, float]:
    """Every post-condition of interpolate_cs as a residual, plus a Lipschitz estimate."""
    Omega = _omega_matrix(omega)
    J0, J1 = np.asarray(J0, dtype=float), np.asarray(J1, dtype=float)
    path = interpolate_cs(Omega, J0, J1, t_grid)
    spectra = [_check_spectrum(_interpolation_step(Omega, J0, J1, float(t))["K"], t, settings.SPECTRAL_TOL) for t in t_grid]
    identity = np.eye(Omega.shape[0])
    square = max(np.abs(J @ J + identity).max() for J in path)
    compatible = all(check_compatible(Omega, J)["compatible"] for J in path)
    endpoints = 0.0
    if t_grid[0] == 0.0:
        endpoints = max(endpoints, float(np.abs(path[0] - J0).max()))
    if t_grid[-1] == 1.0:
        endpoints = max(endpoints, float(np.abs(path[-1] - J1).max()))
    steps = np.diff(np.asarray(t_grid, dtype=float))
    lipschitz = max(
        (np.linalg.norm(b - a, 2) / dt for a, b, dt in zip(path, path[1:], steps) if dt > 0),
        default=0.0,
    )
    return {
        "square_residual": float(square),
        "endpoint_residual": endpoints,
        "max_real_part": max(s["max_real"] for s in spectra),
        "min_modulus": min(s["min_modulus"] for s in spectra),
        "compatible_everywhere": compatible,
        "lipschitz_estimate": float(lipschitz),
    }


def inverse_sqrt_series_check(K: np.ndarray, terms: int = 200) -> float:
    """
    Compares (-K^2)^{-1/2} - I with R f(R), R = I + K^2, f(R) = sum_k c_k R^{k-1},
    c_k = binom(2k, k) / 4^k. Needs spectral radius of R below 1.
    """
    n = K.shape[0]
    R = np.eye(n) + K @ K
    radius = np.abs(np.linalg.eigvals(R)).max()
    if radius >= 1:
        raise InputError(f"series diverges: spectral radius of I + K^2 is {radius:.3f}")
    series = np.zeros_like(R)
    power = np.eye(n)
    c = 1.0
    for k in range(1, terms + 1):
        c *= (2 * k - 1) / (2 * k)
        series = series + c * power
        power = power @ R
    values = np.linalg.eigvals(-K @ K)
    if np.abs(values.imag).max() > 1e-8 or values.real.min() <= 0:
        raise InputError("-K^2 must have positive real spectrum")
    # -K^2 is diagonalizable with positive spectrum; evaluate spectrally
    w, V = np.linalg.eig(-K @ K)
    spectral = (V * (1.0 / np.sqrt(w.real))) @ np.linalg.inv(V)
    return float(np.abs(spectral.real - np.eye(n) - R @ series).max())


def restricted_norm(A, J, reference_metric) -> Dict[str, float]:
    """||A|| + ||[J, A]||_HS, both in a frame orthonormal for the reference metric."""
    A, J = np.asarray(A, dtype=float), np.asarray(J, dtype=float)
    if A.shape != J.shape or A.shape != np.shape(reference_metric):
        raise InputError("restricted_norm needs matching shapes")
    L = metric_factor(np.asarray(reference_metric, dtype=float))
    op_norm = float(np.linalg.norm(to_metric_frame(A, L), 2))
    hs = float(np.linalg.norm(to_metric_frame(J @ A - A @ J, L), "fro"))
    return {"op_norm": op_norm, "hs_commutator": hs, "total": op_norm + hs}


def _require_symplectic(A: np.ndarray, Omega: np.ndarray, tol: float) -> float:
    defect = float(np.abs(A.T @ Omega @ A - Omega).max())
    if defect > tol:
        raise InputError(f"A is not symplectic: ||A^T Omega A - Omega|| = {defect:.3e}")
    return defect


def polar_retraction(A, omega, J, t_grid: Sequence[float]) -> RetractionPath:
    """A_t = R P^t with A = R P the polar decomposition for g = Omega J."""
    Omega = _omega_matrix(omega)
    A, J = np.asarray(A, dtype=float), np.asarray(J, dtype=float)
    _require_symplectic(A, Omega, settings.SPECTRAL_TOL * max(1.0, np.linalg.norm(A, 2) ** 2))
    L = metric_factor(Omega @ J)
    unitary, positive = polar(to_metric_frame(A, L))
    operators = []
    for t in t_grid:
        P_t = symmetric_function(positive, lambda x, t=float(t): np.power(x, t))
        operators.append(from_metric_frame(unitary @ P_t, L))
    base = restricted_norm(A, J, Omega @ J)["hs_commutator"]
    worst = max(restricted_norm(A_t, J, Omega @ J)["hs_commutator"] for A_t in operators)
    constant = worst / base if base > 1e-14 else (0.0 if worst <= 1e-12 else float("inf"))
    return RetractionPath(
        base=A,
        t_grid=tuple(float(t) for t in t_grid),
        operators=tuple(operators),
        unitary_part=from_metric_frame(unitary, L),
        positive_part=from_metric_frame(positive, L),
        commutator_constant=float(constant),
    )


def retraction_report(path: RetractionPath, omega, J) -> Dict[str, float]:
    Omega = _omega_matrix(omega)
    J = np.asarray(J, dtype=float)
    g = Omega @ J
    symplectic = max(float(np.abs(A_t.T @ Omega @ A_t - Omega).max()) for A_t in path.operators)
    start = path.start
    report = {
        "symplectic_residual": symplectic,
        "start_symplectic": float(np.abs(start.T @ Omega @ start - Omega).max()),
        "start_orthogonal": float(np.abs(start.T @ g @ start - g).max()),
        "commutator_constant": path.commutator_constant,
    }
    if path.t_grid[-1] == 1.0:
        report["endpoint_residual"] = float(np.abs(path.operators[-1] - path.base).max())
    return report


def hs_equivalence_identity(omega, J0, J1) -> Dict[str, object]:
    """g1^{-1} g0 against J1^{-1} J0."""
    Omega = _omega_matrix(omega)
    J0, J1 = np.asarray(J0, dtype=float), np.asarray(J1, dtype=float)
    g0, g1 = Omega @ J0, Omega @ J1
    lhs = np.linalg.solve(g1, g0)
    rhs = np.linalg.solve(J1, J0)
    return {"lhs": lhs, "rhs": rhs, "residual": float(np.linalg.norm(lhs - rhs, "fro"))}
