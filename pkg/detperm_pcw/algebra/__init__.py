from .errors import (
    BudgetExhaustedError,
    ConfigError,
    ContractError,
    ParseError,
    PcwError,
    ShapeError,
)
from .gf2core import BinaryMatrix, IntMatrix, IntVector
from .types import (
    ColumnSubset,
    ConeReport,
    CompletionResult,
    GaussianLimitReport,
    LdpcSpec,
    PseudoWeight,
    VectorKind,
    VectorRecord,
    WeightHistogram,
)

__all__ = [
    "BinaryMatrix", "IntMatrix", "IntVector",
    "ColumnSubset", "ConeReport", "CompletionResult", "GaussianLimitReport",
    "LdpcSpec", "PseudoWeight", "VectorKind", "VectorRecord", "WeightHistogram",
    "PcwError", "ShapeError", "ContractError", "ParseError", "ConfigError",
    "BudgetExhaustedError",
]
