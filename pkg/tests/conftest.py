from __future__ import annotations

from pathlib import Path

import pytest

from detperm_pcw.algebra.codegen import dumbbell, example_h422
from detperm_pcw.algebra.gf2core import BinaryMatrix
from detperm_pcw.formats import write_alist, write_dense


@pytest.fixture
def h422() -> BinaryMatrix:
    return example_h422()


@pytest.fixture
def dumbbell3() -> BinaryMatrix:
    return dumbbell(3)


@pytest.fixture
def dumbbell4() -> BinaryMatrix:
    return dumbbell(4)


@pytest.fixture
def matrix_file(tmp_path: Path):
    """Write a matrix to tmp_path and return the path."""

    def write(H: BinaryMatrix, name: str = "h.txt") -> Path:
        path = tmp_path / name
        path.write_text(write_alist(H) if path.suffix == ".alist" else write_dense(H))
        return path

    return write
