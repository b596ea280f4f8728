from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class AlgebraName(str, Enum):
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    B2 = "B2"
    B3 = "B3"
    C3 = "C3"
    G2 = "G2"


class GroupName(str, Enum):
    SU2 = "SU2"
    SU3 = "SU3"


class Profile(str, Enum):
    QUICK = "quick"
    FULL = "full"


class AutomorphismKind(str, Enum):
    IDENTITY = "identity"
    INNER = "inner"
    CONJUGATION = "conjugation"


class CheckParams(BaseModel):
    """Base for per-check parameters; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", use_enum_values=True)


class AlgebraParams(CheckParams):
    algebra: AlgebraName = AlgebraName.A2


class AffineParams(CheckParams):
    algebra: AlgebraName = AlgebraName.A1
    n_max: int = Field(default=4, ge=0, le=64)
    max_length: int = Field(default=8, ge=0, le=16)


class CliffordParams(CheckParams):
    dim: int = Field(default=6, ge=2, le=10)
    trials: int = Field(default=3, ge=1, le=50)

    @field_validator("dim")
    @classmethod
    def validate_even(cls, v):
        if v % 2:
            raise ValueError("dim must be even")
        return v


class SubspaceParams(CliffordParams):
    dim: int = Field(default=4, ge=4, le=8)
    w_dim: int = Field(default=2, ge=2, le=6)


class WeylSpinorParams(CheckParams):
    algebra: AlgebraName = AlgebraName.A2
    trials: int = Field(default=3, ge=1, le=50)


class SymplecticParams(CheckParams):
    dim: int = Field(default=8, ge=2, le=40)
    t_steps: int = Field(default=11, ge=2, le=1001)
    trials: int = Field(default=3, ge=1, le=200)

    @field_validator("dim")
    @classmethod
    def validate_even(cls, v):
        if v % 2:
            raise ValueError("dim must be even")
        return v


class LoopParams(CheckParams):
    algebra: AlgebraName = AlgebraName.A1
    modes: int = Field(default=16, ge=1, le=128)
    mu: Optional[List[float]] = None
    eps: float = Field(default=1.0, gt=0)
    trials: int = Field(default=10, ge=1, le=200)


class WeakStrongParams(CheckParams):
    algebra: AlgebraName = AlgebraName.A1
    sobolev: float = 0.5
    modes_list: List[int] = Field(default_factory=lambda: [8, 16, 32, 64])
    mu: Optional[List[float]] = None

    @field_validator("modes_list")
    @classmethod
    def validate_increasing(cls, v):
        if len(v) < 2 or any(b <= a for a, b in zip(v, v[1:])) or v[0] < 1:
            raise ValueError("modes_list must hold at least two increasing positive cutoffs")
        return v


class PathParams(CheckParams):
    group: GroupName = GroupName.SU2
    samples: int = Field(default=200, ge=8, le=20000)
    fd_step: float = Field(default=1e-3, gt=0, le=0.1)
    paths: int = Field(default=1, ge=1, le=100)
    levels: int = Field(default=3, ge=2, le=5)
    automorphism: AutomorphismKind = AutomorphismKind.INNER
    bandwidth: int = Field(default=2, ge=1, le=8)
