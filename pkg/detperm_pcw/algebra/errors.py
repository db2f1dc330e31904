"""Error types for pseudo-codeword computations."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from .gf2core import BinaryMatrix


class PcwError(Exception):
    """Base exception for everything the library and CLI raise on purpose."""

    exit_code: int = 2

    def __init__(self, code: str, message: str, exit_code: Optional[int] = None) -> None:
        self.code = code
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(f"{code}: {message}")


class ShapeError(PcwError):
    """Non-square matrix, length mismatch or index out of range."""

    def __init__(self, message: str, code: str = "shape.mismatch") -> None:
        super().__init__(code, message, 2)


class ContractError(PcwError):
    """A precondition or a theorem check failed."""

    def __init__(self, message: str, code: str = "contract.violated") -> None:
        super().__init__(code, message, 2)


class ParseError(PcwError):
    """Malformed matrix input."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__("parse.failed", f"{message}{where}", 1)


class ConfigError(PcwError):
    """Invalid run configuration or config file."""

    def __init__(self, message: str) -> None:
        super().__init__("config.invalid", message, 1)


class BudgetExhaustedError(PcwError):
    """A randomized generator ran out of attempts."""

    def __init__(self, message: str, best: Optional[BinaryMatrix] = None) -> None:
        self.best = best
        super().__init__("budget.exhausted", message, 3)
