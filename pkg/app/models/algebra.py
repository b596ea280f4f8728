"""
Exact root-system value types.

Weights and roots are stored as tuples in simple-root coordinates, with
entries that are ``int`` or ``fractions.Fraction``. Matrices act on these
coordinate columns (column j is the image of the j-th simple root).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

import numpy as np

from app.core.errors import InputError

Rational = Union[int, Fraction]
Weight = Tuple[Rational, ...]
IntMatrix = Tuple[Tuple[int, ...], ...]


class LieType(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    G = "G"


def exact_matrix(rows: Iterable[Iterable[Rational]]) -> np.ndarray:
    """numpy object array holding ints/Fractions so that @ stays exact."""
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def exact_vector(values: Iterable[Rational]) -> np.ndarray:
    return np.array([Fraction(x) for x in values], dtype=object)


def normalize_weight(values: Iterable[Rational]) -> Weight:
    """Collapse integral Fractions to int so equal weights hash equally."""
    out = []
    for x in values:
        x = Fraction(x)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


def integral_weight(values: Iterable[Rational]) -> Tuple[int, ...]:
    weight = normalize_weight(values)
    if any(isinstance(x, Fraction) for x in weight):
        raise InputError(f"weight {weight} is not in the root lattice")
    return tuple(int(x) for x in weight)


@dataclass(frozen=True)
class RootSystem:
    lie_type: LieType
    rank: int
    cartan_matrix: IntMatrix
    gram: Tuple[Tuple[Fraction, ...], ...]
    positive_roots: Tuple[Tuple[int, ...], ...]
    theta: Tuple[int, ...]
    rho: Weight

    @property
    def name(self) -> str:
        return f"{self.lie_type.value}{self.rank}"

    @property
    def simple_roots(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(
            tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)
        )

    @property
    def roots(self) -> Tuple[Tuple[int, ...], ...]:
        negatives = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return self.positive_roots + negatives

    def inner(self, x: Iterable[Rational], y: Iterable[Rational]) -> Fraction:
        """Basic inner product B(x, y) with B(theta, theta) = 2."""
        gram = exact_matrix(self.gram)
        return Fraction(exact_vector(x) @ gram @ exact_vector(y))

    def coroot(self, root: Iterable[Rational]) -> Weight:
        root = tuple(root)
        scale = Fraction(2) / self.inner(root, root)
        return normalize_weight(scale * Fraction(c) for c in root)

    def pairing(self, weight: Iterable[Rational], root: Iterable[Rational]) -> Fraction:
        """<weight, root^vee> = 2 B(weight, root) / B(root, root)."""
        root = tuple(root)
        return 2 * self.inner(weight, root) / self.inner(root, root)

    @staticmethod
    def is_positive(root: Iterable[Rational]) -> bool:
        return any(c > 0 for c in root)

    def positive_index(self, root: Iterable[Rational]) -> int:
        return self.positive_roots.index(tuple(int(c) for c in root))


@dataclass(frozen=True)
class WeylElement:
    word: Tuple[int, ...]
    matrix: IntMatrix
    length: int

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    def apply(self, weight: Iterable[Rational]) -> Weight:
        return normalize_weight(exact_matrix(self.matrix) @ exact_vector(weight))

    def inverse_matrix(self) -> IntMatrix:
        # Weyl matrices in simple-root coordinates are integral with integral inverse.
        inv = np.rint(np.linalg.inv(np.array(self.matrix, dtype=float))).astype(int)
        return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class AffineRoot:
    finite_part: Tuple[int, ...]
    mode: int
    multiplicity: int = 1

    def __post_init__(self):
        if self.mode == 0 and not any(self.finite_part):
            raise InputError("(0, 0) is not an affine root")

    @property
    def is_positive(self) -> bool:
        if self.mode != 0:
            return self.mode > 0
        return RootSystem.is_positive(self.finite_part)


@dataclass(frozen=True)
class AffineWeylElement:
    """Level-h-dual affine Weyl element acting by xi -> finite(xi) + translation."""

    translation: Weight
    finite: WeylElement
    length: int
    word: Optional[Tuple[int, ...]] = None

    @property
    def key(self) -> Tuple[Weight, IntMatrix]:
        return (self.translation, self.finite.matrix)

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1


@dataclass(frozen=True)
class LaurentCharacter:
    """Finitely supported integer combination of formal exponentials t^lambda."""

    terms: Tuple[Tuple[Tuple[int, ...], int], ...] = field(default_factory=tuple)

    @classmethod
    def from_dict(cls, coefficients: Dict[Tuple[int, ...], int]) -> "LaurentCharacter":
        cleaned = sorted((tuple(k), int(v)) for k, v in coefficients.items() if v != 0)
        return cls(terms=tuple(cleaned))

    @classmethod
    def monomial(cls, weight: Iterable[Rational], coefficient: int = 1) -> "LaurentCharacter":
        return cls.from_dict({integral_weight(weight): coefficient})

    @classmethod
    def one(cls, rank: int) -> "LaurentCharacter":
        return cls.monomial((0,) * rank)

    def as_dict(self) -> Dict[Tuple[int, ...], int]:
        return dict(self.terms)

    def coefficient(self, weight: Iterable[Rational]) -> int:
        return self.as_dict().get(integral_weight(weight), 0)

    def __add__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        acc = self.as_dict()
        for weight, coeff in other.terms:
            acc[weight] = acc.get(weight, 0) + coeff
        return LaurentCharacter.from_dict(acc)

    def __neg__(self) -> "LaurentCharacter":
        return LaurentCharacter.from_dict({w: -c for w, c in self.terms})

    def __sub__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        return self + (-other)

    def __mul__(self, other: "LaurentCharacter") -> "LaurentCharacter":
        acc: Dict[Tuple[int, ...], int] = {}
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                weight = tuple(a + b for a, b in zip(w1, w2))
                acc[weight] = acc.get(weight, 0) + c1 * c2
        return LaurentCharacter.from_dict(acc)

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, t: "TorusElement") -> complex:
        return sum(c * t.character(w) for w, c in self.terms)


@dataclass(frozen=True)
class TorusElement:
    """
    Point t = exp(xi) of the maximal torus, recorded by the angles alpha_i(xi)
    on the simple roots, so that t^lambda = exp(2 pi i sum_i lambda_i angle_i)
    for lambda in simple-root coordinates.
    """

    angles: Tuple[float, ...]

    @classmethod
    def random(cls, rank: int, rng: np.random.Generator) -> "TorusElement":
        return cls(angles=tuple(float(x) for x in rng.uniform(0.0, 1.0, size=rank)))

    @classmethod
    def identity(cls, rank: int) -> "TorusElement":
        return cls(angles=(0.0,) * rank)

    def character(self, weight: Iterable[Rational]) -> complex:
        phase = sum(float(c) * a for c, a in zip(weight, self.angles))
        return cmath.exp(2j * math.pi * phase)

    def inverse_image(self, w: WeylElement) -> "TorusElement":
        """w^{-1}(t), determined by (w^{-1} t)^lambda = t^{w lambda}."""
        matrix = np.array(w.matrix, dtype=float)
        return TorusElement(angles=tuple(float(x) for x in matrix.T @ np.array(self.angles)))
