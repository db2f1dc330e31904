"""Data types shared by the pseudo-codeword modules."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class VectorKind(str, enum.Enum):
    DET = "det"
    ABSDET = "absdet"
    PERM = "perm"

    @property
    def is_nonnegative(self) -> bool:
        return self is not VectorKind.DET


class ConstraintKind(str, enum.Enum):
    NONNEG = "nonneg"  # omega_i >= 0
    PARITY = "parity"  # omega_i <= sum of the other omegas on check j


class PcwClass(str, enum.Enum):
    ZERO = "zero"
    CODEWORD = "codeword"  # positive multiple of a binary codeword
    MINIMAL = "minimal"  # on an edge of the cone, not codeword-type
    PSEUDO = "pseudo"


class ColumnSubset(BaseModel):
    """A sorted subset S of column indices, usually of size m+1."""

    model_config = ConfigDict(frozen=True)

    indices: tuple[int, ...]

    @field_validator("indices")
    @classmethod
    def _strictly_increasing(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(x < 0 for x in v):
            raise ValueError("column indices must be non-negative")
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ValueError("column indices must be strictly increasing")
        return v

    @classmethod
    def of(cls, indices: list[int] | tuple[int, ...]) -> ColumnSubset:
        return cls(indices=tuple(sorted(set(indices))))

    def eta(self, i: int) -> int:
        """Position of i within the sorted subset."""
        return self.indices.index(i)

    def without(self, i: int) -> tuple[int, ...]:
        return tuple(x for x in self.indices if x != i)

    def complement(self, n: int) -> tuple[int, ...]:
        chosen = set(self.indices)
        return tuple(i for i in range(n) if i not in chosen)

    def __contains__(self, i: object) -> bool:
        return i in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.indices)


class Constraint(BaseModel):
    """One inequality of the fundamental cone."""

    model_config = ConfigDict(frozen=True)

    kind: ConstraintKind
    bit: int
    check: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is ConstraintKind.NONNEG:
            return f"nonneg(i={self.bit})"
        return f"parity(j={self.check},i={self.bit})"


class ConeReport(BaseModel):
    member: bool
    violated: list[Constraint] = Field(default_factory=list)
    active: list[Constraint] = Field(default_factory=list)

    @model_validator(mode="after")
    def _member_iff_no_violation(self) -> ConeReport:
        if self.member == bool(self.violated):
            raise ValueError("member must be true exactly when nothing is violated")
        return self


class PseudoWeight(BaseModel):
    """AWGNC pseudo-weight; the all-zero vector carries value 0 and is_zero."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    is_zero: bool = False

    def __float__(self) -> float:
        return float(self.value)


class WeightHistogram(BaseModel):
    edges: list[float]
    counts: list[int]
    zero_count: int = 0
    total: int = 0  # nonzero vectors seen

    @model_validator(mode="after")
    def _shape(self) -> WeightHistogram:
        if len(self.edges) != len(self.counts):
            raise ValueError("one count per edge is required")
        return self


class VectorRecord(BaseModel):
    """One row of a batch computation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    subset: ColumnSubset
    vector: tuple[int, ...]
    is_unscaled_pcw: bool
    weight: PseudoWeight
    minimal: Optional[bool] = None

    @property
    def is_zero(self) -> bool:
        return self.weight.is_zero


class CompletionResult(BaseModel):
    root: int
    omega: tuple[int, ...]
    nu: tuple[int, ...]
    jprime: tuple[int, ...]
    verified: bool

    @model_validator(mode="after")
    def _nu_matches_omega(self) -> CompletionResult:
        if any(abs(a) != b for a, b in zip(self.nu, self.omega)):
            raise ValueError("|nu_i| must equal omega_i")
        return self


class BitLimitRecord(BaseModel):
    bit: int
    in_subset: bool
    target: int  # omega_i squared
    products: list[float]  # gamma^2 * sigma_i^2 along the schedule
    converged: bool
    error: float  # relative, or absolute for a zero target


class GaussianLimitReport(BaseModel):
    schedule: list[float]
    records: list[BitLimitRecord]

    @property
    def converged(self) -> bool:
        return all(r.converged for r in self.records)

    @property
    def max_error(self) -> float:
        return max((r.error for r in self.records), default=0.0)


class LdpcSpec(BaseModel):
    """Parameters of a random (dv, dc)-regular parity-check matrix."""

    n: int = Field(gt=0)
    dv: int = Field(gt=0)
    dc: int = Field(gt=0)
    seed: int = Field(default=0, ge=0, lt=2**64)

    @model_validator(mode="after")
    def _divisible(self) -> LdpcSpec:
        if (self.n * self.dv) % self.dc:
            raise ValueError(f"n*dv = {self.n * self.dv} is not divisible by dc = {self.dc}")
        if self.dv > self.m:
            raise ValueError("dv cannot exceed the number of checks")
        return self

    @property
    def m(self) -> int:
        return self.n * self.dv // self.dc
