"""Small dense linear-algebra helpers and seeded random generators."""
from typing import Callable

import numpy as np
from scipy.linalg import cholesky, eigh, expm, solve_triangular
from scipy.stats import ortho_group


def symmetric_function(matrix: np.ndarray, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """fn applied to a symmetric/Hermitian matrix through its eigendecomposition."""
    herm = (matrix + matrix.conj().T) / 2
    values, vectors = eigh(herm)
    return (vectors * fn(values)) @ vectors.conj().T


def metric_factor(g: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor L with g = L L^T."""
    return cholesky((g + g.T) / 2, lower=True)


def to_metric_frame(A: np.ndarray, L: np.ndarray) -> np.ndarray:
    """L^T A L^{-T}: the matrix of A in a g-orthonormal frame."""
    return solve_triangular(L, (L.T @ A).T, lower=True).T


def from_metric_frame(B: np.ndarray, L: np.ndarray) -> np.ndarray:
    """Inverse of to_metric_frame: L^{-T} B L^T."""
    return solve_triangular(L.T, B @ L.T, lower=False)


def standard_complex_structure(dim: int) -> np.ndarray:
    j = np.zeros((dim, dim))
    for k in range(0, dim, 2):
        j[k + 1, k] = 1.0
        j[k, k + 1] = -1.0
    return j


def random_metric(dim: int, rng: np.random.Generator, spread: float = 0.3) -> np.ndarray:
    b = rng.standard_normal((dim, dim))
    return np.eye(dim) + spread * b @ b.T / dim


def random_orthogonal(g: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Random A with A^T g A = g."""
    dim = g.shape[0]
    L = metric_factor(g)
    o = ortho_group.rvs(dim, random_state=rng) if dim > 1 else np.array([[1.0]])
    return from_metric_frame(o, L)


def random_orthogonal_structure(g: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Random g-orthogonal complex structure L^{-T} O J_std O^T L^T."""
    dim = g.shape[0]
    o = ortho_group.rvs(dim, random_state=rng)
    return from_metric_frame(o @ standard_complex_structure(dim) @ o.T, metric_factor(g))


def random_symplectic(omega: np.ndarray, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """exp(Omega^{-1} H) for a random symmetric H of operator norm ~ scale."""
    dim = omega.shape[0]
    h = rng.standard_normal((dim, dim))
    h = (h + h.T) / 2
    h *= scale / np.linalg.norm(h, 2)
    return expm(np.linalg.solve(omega, h))


def random_compatible_structure(omega: np.ndarray, rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """S J_std S^{-1} with S symplectic, so that Omega J = S^{-T} S^{-1}."""
    s = random_symplectic(omega, rng, scale)
    return s @ standard_complex_structure(omega.shape[0]) @ np.linalg.inv(s)
