from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.errors import InputError
from app.models.algebra import TorusElement


@dataclass(frozen=True, eq=False)
class EuclideanSpace:
    metric: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.metric, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InputError(f"metric must be square, got shape {g.shape}")
        if g.shape[0] % 2:
            raise InputError(f"dimension must be even, got {g.shape[0]}")
        if np.linalg.norm(g - g.T) > settings.CLIFFORD_TOL * max(1.0, np.linalg.norm(g)):
            raise InputError("metric is not symmetric")
        if np.linalg.eigvalsh(g).min() <= 0:
            raise InputError("metric is not positive definite")
        object.__setattr__(self, "metric", g)

    @classmethod
    def standard(cls, dim: int) -> "EuclideanSpace":
        return cls(metric=np.eye(dim))

    @property
    def dim(self) -> int:
        return self.metric.shape[0]


@dataclass(frozen=True, eq=False)
class ComplexStructureOperator:
    """J with J^2 = -I; the orthogonality/compatibility flags are verified on construction."""

    matrix: np.ndarray
    orthogonal_wrt: Optional[np.ndarray] = None
    compatible_with: Optional[np.ndarray] = None

    def __post_init__(self):
        j = np.asarray(self.matrix, dtype=float)
        n = j.shape[0]
        square = np.linalg.norm(j @ j + np.eye(n))
        if square > settings.CLIFFORD_TOL * max(1.0, np.linalg.norm(j) ** 2):
            raise InputError(f"J^2 != -I (residual {square:.3e})")
        object.__setattr__(self, "matrix", j)
        if self.orthogonal_wrt is not None:
            g = np.asarray(self.orthogonal_wrt, dtype=float)
            defect = np.linalg.norm(j.T @ g @ j - g)
            if defect > settings.ORTHOGONALITY_TOL * max(1.0, np.linalg.norm(g)):
                raise InputError(f"J is not orthogonal: ||J^T g J - g|| = {defect:.3e}")
        if self.compatible_with is not None:
            omega = np.asarray(self.compatible_with, dtype=float)
            g = omega @ j
            if np.linalg.norm(g - g.T) > settings.SPECTRAL_TOL * max(1.0, np.linalg.norm(g)):
                raise InputError("omega(., J.) is not symmetric")
            if np.linalg.eigvalsh((g + g.T) / 2).min() <= 0:
                raise InputError("omega(., J.) is not positive definite")

    @classmethod
    def standard(cls, dim: int) -> "ComplexStructureOperator":
        j = np.zeros((dim, dim))
        for k in range(0, dim, 2):
            j[k + 1, k] = 1.0
            j[k, k + 1] = -1.0
        return cls(matrix=j)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class SpinorModule:
    """
    Z2-graded Clifford module. ``clifford_action[i]`` is rho of the i-th
    standard basis vector of ``space``; ``grading`` holds the +-1 parity of
    each basis vector of the module.
    """

    space: EuclideanSpace
    basis: Tuple[Hashable, ...]
    clifford_action: np.ndarray
    grading: np.ndarray
    complex_structure: Optional[ComplexStructureOperator] = None
    adapted_e: Optional[np.ndarray] = None
    adapted_f: Optional[np.ndarray] = None

    @property
    def fock_dim(self) -> int:
        return len(self.basis)

    @property
    def grading_operator(self) -> np.ndarray:
        return np.diag(self.grading).astype(complex)

    def rho(self, v: np.ndarray) -> np.ndarray:
        return np.tensordot(np.asarray(v, dtype=complex), self.clifford_action, axes=1)

    def index(self, label: Hashable) -> int:
        return self.basis.index(label)


@dataclass(frozen=True, eq=False)
class TorusAction:
    """Torus weights (simple-root coordinates) of the H+ basis vectors."""

    weights: Tuple[Tuple[int, ...], ...]
    basis: Tuple[Tuple[int, ...], ...] = field(default=())

    def weight_of(self, subset: Tuple[int, ...]) -> Tuple[int, ...]:
        rank = len(self.weights[0]) if self.weights else 0
        total = [0] * rank
        for k in subset:
            for i, c in enumerate(self.weights[k]):
                total[i] += c
        return tuple(total)

    def matrix(self, t: TorusElement) -> np.ndarray:
        return np.diag([t.character(self.weight_of(s)) for s in self.basis])
