from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from app.core.errors import InputError


@dataclass(frozen=True, eq=False)
class TruncatedLoop:
    """
    Fourier-truncated loop xi(t) = sum_{|n| <= N} X_n e^{2 pi i n t}.
    ``coefficients[n + N]`` is X_n in algebra coordinates.
    """

    cutoff: int
    coefficients: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[0] != 2 * self.cutoff + 1:
            raise InputError(f"expected {2 * self.cutoff + 1} Fourier modes, got shape {coeffs.shape}")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, cutoff: int, dim: int) -> "TruncatedLoop":
        return cls(cutoff, np.zeros((2 * cutoff + 1, dim), dtype=complex))

    @classmethod
    def from_modes(cls, cutoff: int, dim: int, modes: Dict[int, np.ndarray]) -> "TruncatedLoop":
        coeffs = np.zeros((2 * cutoff + 1, dim), dtype=complex)
        for n, value in modes.items():
            if abs(n) > cutoff:
                raise InputError(f"mode {n} beyond cutoff {cutoff}")
            coeffs[n + cutoff] += value
        return cls(cutoff, coeffs)

    @classmethod
    def constant(cls, cutoff: int, x: np.ndarray) -> "TruncatedLoop":
        return cls.from_modes(cutoff, len(x), {0: x})

    @classmethod
    def cosine(cls, cutoff: int, x: np.ndarray, n: int) -> "TruncatedLoop":
        """x cos(2 pi n t)."""
        if n == 0:
            return cls.constant(cutoff, x)
        return cls.from_modes(cutoff, len(x), {n: x / 2, -n: x / 2})

    @classmethod
    def sine(cls, cutoff: int, x: np.ndarray, n: int) -> "TruncatedLoop":
        """x sin(2 pi n t)."""
        return cls.from_modes(cutoff, len(x), {n: x / 2j, -n: -x / 2j})

    @classmethod
    def random_real(cls, cutoff: int, dim: int, rng: np.random.Generator, max_mode: Optional[int] = None,
                    amplitude: float = 1.0) -> "TruncatedLoop":
        max_mode = cutoff if max_mode is None else max_mode
        coeffs = np.zeros((2 * cutoff + 1, dim), dtype=complex)
        coeffs[cutoff] = amplitude * rng.standard_normal(dim)
        for n in range(1, max_mode + 1):
            value = amplitude * (rng.standard_normal(dim) + 1j * rng.standard_normal(dim)) / 2
            coeffs[cutoff + n] = value
            coeffs[cutoff - n] = np.conj(value)
        return cls(cutoff, coeffs)

    @property
    def dim(self) -> int:
        return self.coefficients.shape[1]

    @property
    def vector(self) -> np.ndarray:
        return self.coefficients.ravel()

    @classmethod
    def from_vector(cls, cutoff: int, vector: np.ndarray) -> "TruncatedLoop":
        return cls(cutoff, np.asarray(vector).reshape(2 * cutoff + 1, -1))

    def mode(self, n: int) -> np.ndarray:
        return self.coefficients[n + self.cutoff]

    @property
    def max_mode(self) -> int:
        nonzero = np.nonzero(np.abs(self.coefficients).max(axis=1) > 0)[0]
        return int(np.abs(nonzero - self.cutoff).max()) if len(nonzero) else 0

    @property
    def is_real(self) -> bool:
        return bool(np.allclose(self.coefficients[::-1], np.conj(self.coefficients), atol=1e-12))

    def __add__(self, other: "TruncatedLoop") -> "TruncatedLoop":
        return TruncatedLoop(self.cutoff, self.coefficients + other.coefficients)

    def __mul__(self, scalar: complex) -> "TruncatedLoop":
        return TruncatedLoop(self.cutoff, self.coefficients * scalar)

    __rmul__ = __mul__

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        modes = np.arange(-self.cutoff, self.cutoff + 1)
        phases = np.exp(2j * np.pi * np.outer(np.atleast_1d(t), modes))
        return phases @ self.coefficients


@dataclass(frozen=True, eq=False)
class LoopOperator:
    """Dense operator on the coefficient space, index (n + N) * dim + a."""

    matrix: np.ndarray
    label: str
    cutoff: int
    dim: int

    def apply(self, loop: TruncatedLoop) -> TruncatedLoop:
        return TruncatedLoop.from_vector(self.cutoff, self.matrix @ loop.vector)

    def block(self, n: int) -> np.ndarray:
        start = (n + self.cutoff) * self.dim
        return self.matrix[start:start + self.dim, start:start + self.dim]


@dataclass(frozen=True)
class SobolevWeight:
    exponent: float

    def weight(self, n) -> np.ndarray:
        return (1.0 + (2 * np.pi * np.asarray(n, dtype=float)) ** 2) ** (self.exponent / 2)

    def norm(self, loop: TruncatedLoop) -> float:
        modes = np.arange(-loop.cutoff, loop.cutoff + 1)
        w = self.weight(modes)
        return float(np.sqrt(np.sum((w[:, None] * np.abs(loop.coefficients)) ** 2)))


@dataclass(frozen=True)
class ChiProfile:
    """
    Strictly positive chi with chi(t) = |t| outside (-eps, eps). Inside, the
    default is the quadratic blend chi_zero + (eps - chi_zero) (t/eps)^2,
    which is (t^2 + eps^2) / (2 eps) for chi_zero = eps/2.
    """

    eps: float
    chi_zero: Optional[float] = None
    inner: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __post_init__(self):
        if self.eps <= 0:
            raise InputError("eps must be positive")

    @property
    def value_at_zero(self) -> float:
        return self.eps / 2 if self.chi_zero is None else self.chi_zero

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.inner is not None:
            inside = self.inner(t)
        else:
            c0 = self.value_at_zero
            inside = c0 + (self.eps - c0) * (t / self.eps) ** 2
        return np.where(np.abs(t) >= self.eps, np.abs(t), inside)
