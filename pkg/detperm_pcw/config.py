"""Configuration for detperm-pcw: packaged YAML defaults and per-run settings."""

from __future__ import annotations

import copy
import enum
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from mautrix.util.config import BaseFileConfig, ConfigUpdateHelper
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from ruamel.yaml.comments import CommentedMap
from ruamel.yaml.error import YAMLError

from .algebra.errors import ConfigError
from .algebra.types import ColumnSubset, VectorKind


def edge_grid(start: float, stop: float, step: float) -> list[float]:
    """start, start+step, ... up to and including stop."""
    if step <= 0 or stop < start:
        raise ConfigError(f"bad histogram grid start={start} stop={stop} step={step}")
    count = int(round((stop - start) / step)) + 1
    return [round(start + k * step, 12) for k in range(count)]


class Config(BaseFileConfig):
    """Packaged defaults with an optional user file copied over them.

    Missing keys read as None, like every mautrix config.
    """

    def __init__(self, path: Optional[Path] = None) -> None:
        base_path = resources.files(__package__).joinpath("example-config.yaml")
        super().__init__(str(path) if path is not None else "", str(base_path))
        self.load()
        try:
            self.update(save=False)
        except ValueError as e:
            raise ConfigError(f"cannot load the packaged defaults: {e}") from e

    def load(self) -> None:
        if not self.path:
            return
        try:
            super().load()
        except OSError as e:
            raise ConfigError(f"cannot read config file {self.path}: {e}") from e
        except YAMLError as e:
            raise ConfigError(f"cannot parse {self.path}: {e}") from e
        if self._data is None:
            self._data = CommentedMap()
        elif not isinstance(self._data, dict):
            raise ConfigError(f"{self.path} must hold a mapping at the top level")

    def do_update(self, helper: ConfigUpdateHelper) -> None:
        # Batch computation
        helper.copy("compute.kind")
        helper.copy("compute.threads")
        helper.copy("compute.block_size")
        helper.copy("compute.perm_max_dim")
        helper.copy("compute.minimality")

        # Histogram and Gaussian checks
        helper.copy("histogram.start")
        helper.copy("histogram.stop")
        helper.copy("histogram.step")
        helper.copy("gaussian.schedule")
        helper.copy("gaussian.rtol")
        helper.copy("gaussian.zero_atol")

        # Generators
        helper.copy("generate.retry_budget")
        helper.copy("generate.swap_budget")

        helper.copy("logging")

    @property
    def logging(self) -> dict[str, Any]:
        return copy.deepcopy(dict(self["logging"]))

    @property
    def default_kind(self) -> Optional[VectorKind]:
        kind = self["compute.kind"]
        return VectorKind(kind) if kind else None

    @property
    def threads(self) -> int:
        return int(self["compute.threads"])

    @property
    def histogram_edges(self) -> list[float]:
        return edge_grid(
            float(self["histogram.start"]), float(self["histogram.stop"]), float(self["histogram.step"])
        )

    @property
    def schedule(self) -> list[float]:
        return [float(e) for e in self["gaussian.schedule"]]


class Command(str, enum.Enum):
    COMPUTE = "compute"
    HISTOGRAM = "histogram"
    CHECK = "check"
    GAUSSIAN = "gaussian"
    GENERATE = "generate"

    @property
    def needs_kind(self) -> bool:
        return self in (Command.COMPUTE, Command.HISTOGRAM)


class Generator(str, enum.Enum):
    H422 = "h422"
    DUMBBELL = "dumbbell"
    REGULAR = "regular"
    DECYCLE = "decycle"
    TREE = "tree"


class RunConfig(BaseModel):
    """Everything one command needs, built from CLI flags over Config defaults."""

    model_config = ConfigDict(frozen=True)

    command: Command
    matrix: Optional[Path] = None
    out: Optional[Path] = None
    kind: Optional[VectorKind] = None
    subsets: list[ColumnSubset] = Field(default_factory=list)
    all_subsets: bool = False
    dedupe: bool = False
    minimality: bool = False
    vector: Optional[tuple[int, ...]] = None
    vectors: Optional[Path] = None
    gnuplot: Optional[Path] = None
    edges: list[float] = Field(default_factory=list)
    eps: list[float] = Field(default_factory=list)
    rtol: float = Field(default=1e-6, gt=0)
    zero_atol: float = Field(default=1e-5, gt=0)
    seed: int = Field(default=0, ge=0, lt=2**64)
    threads: int = Field(default=1, ge=1)
    block_size: int = Field(default=64, ge=1)
    perm_max_dim: int = Field(default=24, ge=0)
    generator: Optional[Generator] = None
    k: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    dv: Optional[int] = None
    dc: Optional[int] = None
    retry_budget: int = Field(default=1000, ge=1)
    swap_budget: int = Field(default=20000, ge=1)

    @field_validator("edges")
    @classmethod
    def _edges_increasing(cls, v: list[float]) -> list[float]:
        if any(a >= b for a, b in zip(v, v[1:])):
            raise ValueError("histogram edges must be strictly increasing")
        return v

    @field_validator("eps")
    @classmethod
    def _schedule_decreasing(cls, v: list[float]) -> list[float]:
        if any(not e > 0 for e in v):
            raise ValueError("epsilon schedule must be positive")
        if any(a <= b for a, b in zip(v, v[1:])):
            raise ValueError("epsilon schedule must be strictly decreasing")
        return v

    @model_validator(mode="after")
    def _command_inputs(self) -> RunConfig:
        if self.command.needs_kind and self.kind is None and self.vectors is None:
            raise ValueError(f"{self.command.value} needs a vector kind")
        if self.command is Command.GENERATE:
            if self.generator is None:
                raise ValueError("generate needs a generator")
        elif self.matrix is None and self.vectors is None:
            raise ValueError(f"{self.command.value} needs --matrix")
        if self.command is Command.CHECK and self.vector is None:
            raise ValueError("check needs --vector")
        if self.command is Command.GAUSSIAN and len(self.subsets) != 1:
            raise ValueError("gaussian needs exactly one --subset")
        if self.subsets and self.all_subsets:
            raise ValueError("--subset and --all-subsets are exclusive")
        return self

    @classmethod
    def build(cls, **fields: Any) -> RunConfig:
        try:
            return cls(**fields)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in e.errors()
            )
            raise ConfigError(problems) from None

    def check_subsets(self, m: int, n: int) -> None:
        """Explicit subsets must have m+1 columns inside range(n)."""
        for s in self.subsets:
            if len(s) != m + 1:
                raise ConfigError(f"subset {{{s}}} has {len(s)} columns, the matrix needs m+1 = {m + 1}")
            if s.indices and s.indices[-1] >= n:
                raise ConfigError(f"subset {{{s}}} names a column outside 0..{n - 1}")
