from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import expm

from app.core.config import settings
from app.core.errors import GridMismatchError, InputError
from app.models.lie import CompactLieAlgebra


@dataclass(frozen=True, eq=False)
class MatrixGroup:
    """SU(n) with its Lie algebra in a basis orthonormal for the basic inner product."""

    name: str
    algebra: CompactLieAlgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def size(self) -> int:
        return self.algebra.matrix_size

    def exp(self, coords: np.ndarray) -> np.ndarray:
        """exp of one coordinate vector or a stack of them."""
        return expm(self.algebra.to_matrix(np.asarray(coords, dtype=float)))

    def inverse(self, g: np.ndarray) -> np.ndarray:
        return np.swapaxes(g.conj(), -1, -2)

    def conjugate(self, g: np.ndarray, coords: np.ndarray) -> np.ndarray:
        """Ad_g X in coordinates, batched over leading axes."""
        X = self.algebra.to_matrix(coords)
        return self.algebra.to_coords(g @ X @ self.inverse(g))

    def adjoint_matrix(self, g: np.ndarray) -> np.ndarray:
        """Matrix of Ad_g on coordinates; column a is Ad_g x_a."""
        return self.conjugate(g, np.eye(self.dim)).T

    def membership_defect(self, g: np.ndarray) -> float:
        identity = np.eye(self.size)
        unitary = np.abs(g @ self.inverse(g) - identity).max()
        det = np.abs(np.linalg.det(g) - 1).max()
        return float(max(unitary, det))


@dataclass(frozen=True, eq=False)
class DiscretePath:
    """Samples gamma_j = gamma(j/M), j = 0..M, and optionally exact velocities."""

    group: MatrixGroup
    samples: np.ndarray
    velocity: Optional[np.ndarray] = None

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 3 or samples.shape[1:] != (self.group.size, self.group.size):
            raise InputError(f"path samples must have shape (M+1, {self.group.size}, {self.group.size})")
        if samples.shape[0] < 3:
            raise InputError("a discrete path needs at least three samples")
        defect = self.group.membership_defect(samples)
        if defect > settings.GROUP_TOL:
            raise InputError(f"path leaves {self.group.name} (defect {defect:.3e})")
        object.__setattr__(self, "samples", samples)

    @property
    def M(self) -> int:
        return self.samples.shape[0] - 1

    @property
    def t_grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.M + 1)

    @property
    def holonomy(self) -> np.ndarray:
        """q(gamma) = gamma(1) gamma(0)^{-1}."""
        return self.samples[-1] @ self.group.inverse(self.samples[0])


@dataclass(frozen=True, eq=False)
class TangentVariation:
    """Right-trivialized variation v_j = (delta gamma gamma^{-1})(j/M) in coordinates."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise InputError(f"variation samples must be a 2-d array, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def M(self) -> int:
        return self.values.shape[0] - 1

    def require_grid(self, path: DiscretePath) -> None:
        if self.values.shape != (path.M + 1, path.group.dim):
            raise GridMismatchError(
                f"variation shape {self.values.shape} does not match path grid ({path.M + 1}, {path.group.dim})"
            )

    def __add__(self, other: "TangentVariation") -> "TangentVariation":
        return TangentVariation(self.values + other.values)

    def __mul__(self, scalar: float) -> "TangentVariation":
        return TangentVariation(self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class Automorphism:
    """
    kappa in Aut(G): ``algebra_matrix`` is kappa_* in coordinates and
    ``group_action`` applies kappa to (stacks of) group elements.
    """

    kind: str
    algebra_matrix: np.ndarray
    group_action: Callable[[np.ndarray], np.ndarray]
    algebra: CompactLieAlgebra

    def __post_init__(self):
        K = np.asarray(self.algebra_matrix, dtype=float)
        orthogonality = np.abs(K.T @ K - np.eye(K.shape[0])).max()
        if orthogonality > settings.ORTHOGONALITY_TOL:
            raise InputError(f"kappa_* does not preserve the inner product (defect {orthogonality:.3e})")
        f = self.algebra.structure_constants
        # kappa_*[x_a, x_b] against [kappa_* x_a, kappa_* x_b]
        lhs = np.einsum("abc,dc->abd", f, K)
        rhs = np.einsum("ia,jb,ijd->abd", K, K, f)
        defect = np.abs(lhs - rhs).max()
        if defect > settings.GROUP_TOL * max(1.0, np.abs(f).max()):
            raise InputError(f"kappa_* does not preserve the bracket (defect {defect:.3e})")
        object.__setattr__(self, "algebra_matrix", K)

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"

    def apply(self, coords: np.ndarray) -> np.ndarray:
        return np.asarray(coords) @ self.algebra_matrix.T


@dataclass(frozen=True, eq=False)
class BandLimitedPath:
    """gamma(t) = g0 exp(Z(t)), Z(t) = t C + sum_k A_k cos(2 pi k t) + B_k sin(2 pi k t)."""

    group: MatrixGroup
    base: np.ndarray
    drift: np.ndarray
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    @classmethod
    def random(cls, group: MatrixGroup, rng: np.random.Generator, bandwidth: int = 2,
               amplitude: float = 0.3, periodic: bool = False) -> "BandLimitedPath":
        base = group.exp(rng.standard_normal(group.dim))
        scale = amplitude / np.arange(1, bandwidth + 1)[:, None]
        drift = np.zeros(group.dim) if periodic else amplitude * rng.standard_normal(group.dim)
        return cls(
            group=group,
            base=base,
            drift=drift,
            cos_coeffs=scale * rng.standard_normal((bandwidth, group.dim)),
            sin_coeffs=scale * rng.standard_normal((bandwidth, group.dim)),
        )

    @classmethod
    def constant(cls, group: MatrixGroup, base: Optional[np.ndarray] = None) -> "BandLimitedPath":
        zeros = np.zeros((1, group.dim))
        base = np.eye(group.size, dtype=complex) if base is None else base
        return cls(group, base, np.zeros(group.dim), zeros, zeros)

    def generator(self, t: np.ndarray) -> np.ndarray:
        k = np.arange(1, len(self.cos_coeffs) + 1)
        phase = 2 * np.pi * np.outer(t, k)
        return np.outer(t, self.drift) + np.cos(phase) @ self.cos_coeffs + np.sin(phase) @ self.sin_coeffs

    def generator_rate(self, t: np.ndarray) -> np.ndarray:
        k = np.arange(1, len(self.cos_coeffs) + 1)
        phase = 2 * np.pi * np.outer(t, k)
        rate = 2 * np.pi * k
        return self.drift + (-np.sin(phase) * rate) @ self.cos_coeffs + (np.cos(phase) * rate) @ self.sin_coeffs

    def sample(self, M: int) -> DiscretePath:
        t = np.linspace(0.0, 1.0, M + 1)
        algebra = self.group.algebra
        Z = algebra.to_matrix(self.generator(t))
        Zdot = algebra.to_matrix(self.generator_rate(t))
        n = self.group.size
        block = np.zeros((M + 1, 2 * n, 2 * n), dtype=complex)
        block[:, :n, :n] = Z
        block[:, n:, n:] = Z
        block[:, :n, n:] = Zdot
        big = expm(block)
        samples = self.base @ big[:, :n, :n]
        velocity = self.base @ big[:, :n, n:]
        return DiscretePath(self.group, samples, velocity)


@dataclass(frozen=True, eq=False)
class BandLimitedVariation:
    """v(t) = offset + t L + sum_k A_k cos(2 pi k t) + B_k sin(2 pi k t); periodic when L = 0."""

    offset: np.ndarray
    linear: np.ndarray
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    @classmethod
    def random(cls, dim: int, rng: np.random.Generator, bandwidth: int = 2, periodic: bool = False,
               amplitude: float = 1.0) -> "BandLimitedVariation":
        linear = np.zeros(dim) if periodic else amplitude * rng.standard_normal(dim)
        return cls(
            offset=amplitude * rng.standard_normal(dim),
            linear=linear,
            cos_coeffs=amplitude * rng.standard_normal((bandwidth, dim)) / 2,
            sin_coeffs=amplitude * rng.standard_normal((bandwidth, dim)) / 2,
        )

    @classmethod
    def constant(cls, x: np.ndarray) -> "BandLimitedVariation":
        x = np.asarray(x, dtype=float)
        zeros = np.zeros((1, len(x)))
        return cls(x, np.zeros(len(x)), zeros, zeros)

    @property
    def is_periodic(self) -> bool:
        return not np.any(self.linear)

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        k = np.arange(1, len(self.cos_coeffs) + 1)
        phase = 2 * np.pi * np.outer(t, k)
        return (self.offset + np.outer(t, self.linear)
                + np.cos(phase) @ self.cos_coeffs + np.sin(phase) @ self.sin_coeffs)

    def sample(self, M: int) -> TangentVariation:
        return TangentVariation(self.evaluate(np.linspace(0.0, 1.0, M + 1)))
