from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.core.errors import InputError


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    """omega(v, w) = v^T Omega w."""

    matrix: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.matrix, dtype=float)
        if omega.ndim != 2 or omega.shape[0] != omega.shape[1] or omega.shape[0] % 2:
            raise InputError(f"symplectic matrix must be square of even size, got {omega.shape}")
        if np.abs(omega + omega.T).max() > 1e-12 * max(1.0, np.abs(omega).max()):
            raise InputError("Omega is not antisymmetric")
        if abs(np.linalg.det(omega)) <= 1e-12:
            raise InputError("Omega is degenerate")
        object.__setattr__(self, "matrix", omega)

    @classmethod
    def standard(cls, dim: int) -> "SymplecticForm":
        omega = np.zeros((dim, dim))
        for k in range(0, dim, 2):
            omega[k, k + 1] = 1.0
            omega[k + 1, k] = -1.0
        return cls(matrix=omega)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v: np.ndarray, w: np.ndarray) -> float:
        return float(v @ self.matrix @ w)


@dataclass(frozen=True, eq=False)
class MetricPair:
    g0: np.ndarray
    g1: np.ndarray

    def __post_init__(self):
        for name in ("g0", "g1"):
            g = np.asarray(getattr(self, name), dtype=float)
            if g.shape != np.shape(self.g0):
                raise InputError("metrics must have the same shape")
            if np.abs(g - g.T).max() > 1e-12 * max(1.0, np.abs(g).max()):
                raise InputError(f"{name} is not symmetric")
            if np.linalg.eigvalsh(g).min() <= 0:
                raise InputError(f"{name} is not positive definite")
            object.__setattr__(self, name, g)


@dataclass(frozen=True, eq=False)
class RetractionPath:
    base: np.ndarray
    t_grid: Tuple[float, ...]
    operators: Tuple[np.ndarray, ...]
    unitary_part: np.ndarray
    positive_part: np.ndarray
    commutator_constant: float

    @property
    def start(self) -> np.ndarray:
        return self.operators[0]
