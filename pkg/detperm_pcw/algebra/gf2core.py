"""Exact linear algebra over GF(2), the integers and the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import ContractError, ShapeError


IntVector = tuple[int, ...]

# Ryser is O(2^n * n); beyond this the CLI refuses instead of hanging
PERM_MAX_DIM = 24

# Exhaustive minimum-distance search stops here
MAX_ENUM_DIMENSION = 20


class BinaryMatrix:
    """An m×n parity-check matrix over GF(2).

    The bits live in a read-only ``uint8`` array, so instances can be shared
    between threads and used as dict keys.
    """

    __slots__ = ("_bits",)

    def __init__(self, rows: Union[np.ndarray, Iterable[Iterable[int]]], n_cols: Optional[int] = None) -> None:
        arr = np.array(rows if isinstance(rows, np.ndarray) else [list(r) for r in rows], dtype=np.int64)
        if arr.size == 0 and arr.ndim != 2:
            arr = arr.reshape(0, n_cols or 0)
        if arr.ndim != 2:
            raise ShapeError(f"expected a 2-D matrix, got {arr.ndim} dimensions")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ContractError("matrix entries must be 0 or 1", code="matrix.not_binary")
        bits = arr.astype(np.uint8)
        bits.setflags(write=False)
        self._bits = bits

    @classmethod
    def zeros(cls, m: int, n: int) -> BinaryMatrix:
        return cls(np.zeros((m, n), dtype=np.uint8))

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def m(self) -> int:
        return self._bits.shape[0]

    @property
    def n(self) -> int:
        return self._bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def rows(self) -> list[IntVector]:
        return [tuple(int(x) for x in row) for row in self._bits]

    def row_support(self, j: int) -> list[int]:
        """I_j(H): bits taking part in check j."""
        return [int(i) for i in np.flatnonzero(self._bits[j])]

    def column_support(self, i: int) -> list[int]:
        """J_i(H): checks that bit i takes part in."""
        return [int(j) for j in np.flatnonzero(self._bits[:, i])]

    def __getitem__(self, key: tuple[int, int]) -> int:
        return int(self._bits[key])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.shape, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"BinaryMatrix({self.rows()!r})"


class IntMatrix:
    """A rectangular matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "n_rows", "n_cols")

    def __init__(self, rows: Iterable[Iterable[int]], n_cols: Optional[int] = None) -> None:
        self.rows: tuple[IntVector, ...] = tuple(tuple(int(x) for x in r) for r in rows)
        self.n_rows = len(self.rows)
        self.n_cols = len(self.rows[0]) if self.rows else (n_cols or 0)
        if any(len(r) != self.n_cols for r in self.rows):
            raise ShapeError("ragged integer matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.rows]!r})"


AnyMatrix = Union[BinaryMatrix, IntMatrix]


def _int_rows(M: AnyMatrix) -> tuple[list[list[int]], int]:
    if isinstance(M, BinaryMatrix):
        return [list(r) for r in M.rows()], M.n
    return [list(r) for r in M.rows], M.n_cols


def _checked_indices(indices: Optional[Iterable[int]], size: int, what: str) -> list[int]:
    if indices is None:
        return list(range(size))
    picked = sorted(set(int(x) for x in indices))
    for x in picked:
        if not 0 <= x < size:
            raise ShapeError(f"{what} index {x} outside 0..{size - 1}", code="index.out_of_range")
    return picked


def submatrix(M: AnyMatrix, R: Optional[Iterable[int]] = None, S: Optional[Iterable[int]] = None) -> AnyMatrix:
    """Return M_{R,S}; ``R=None`` selects every row (the M_S shorthand)."""
    rows = _checked_indices(R, M.shape[0], "row")
    cols = _checked_indices(S, M.shape[1], "column")
    if isinstance(M, BinaryMatrix):
        return BinaryMatrix(M.bits[np.ix_(rows, cols)].reshape(len(rows), len(cols)))
    return IntMatrix([[M.rows[r][c] for c in cols] for r in rows], n_cols=len(cols))


def _square_rows(M: AnyMatrix) -> list[list[int]]:
    rows, n_cols = _int_rows(M)
    if len(rows) != n_cols:
        raise ShapeError(f"expected a square matrix, got {len(rows)}x{n_cols}", code="shape.not_square")
    return rows


def det_int(M: AnyMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = _square_rows(M)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot_row = a[k]
        pivot = pivot_row[k]
        for i in range(k + 1, n):
            row = a[i]
            f = row[k]
            for j in range(k + 1, n):
                # Sylvester's identity makes this division exact
                row[j] = (row[j] * pivot - f * pivot_row[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def perm_int(M: AnyMatrix, max_dim: int = PERM_MAX_DIM) -> int:
    """Exact permanent by Ryser's formula with Gray-code subset order."""
    a = _square_rows(M)
    n = len(a)
    if n == 0:
        return 1
    if n > max_dim:
        raise ContractError(f"permanent of a {n}x{n} matrix exceeds the cap of {max_dim}", code="perm.too_large")
    columns = [[a[r][c] for r in range(n)] for c in range(n)]
    row_sums = [0] * n
    chosen = [False] * n
    size = 0
    total = 0
    for k in range(1, 1 << n):
        c = (k & -k).bit_length() - 1
        col = columns[c]
        if chosen[c]:
            row_sums = [s - x for s, x in zip(row_sums, col)]
            size -= 1
        else:
            row_sums = [s + x for s, x in zip(row_sums, col)]
            size += 1
        chosen[c] = not chosen[c]
        prod = 1
        for s in row_sums:
            if not s:
                prod = 0
                break
            prod *= s
        total += -prod if size & 1 else prod
    return -total if n & 1 else total


def _rref_gf2(H: BinaryMatrix) -> tuple[np.ndarray, list[int]]:
    a = H.bits.copy()
    m, n = a.shape
    pivots: list[int] = []
    for col in range(n):
        r = len(pivots)
        if r == m:
            break
        below = np.flatnonzero(a[r:, col])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        hits = np.flatnonzero(a[:, col])
        hits = hits[hits != r]
        a[hits] ^= a[r]
        pivots.append(col)
    return a, pivots


def rank_gf2(H: BinaryMatrix) -> int:
    """Row rank over GF(2) by XOR elimination."""
    return len(_rref_gf2(H)[1])


def nullspace_gf2(H: BinaryMatrix) -> list[IntVector]:
    """Basis of {c : H c^T = 0 over GF(2)}."""
    a, pivots = _rref_gf2(H)
    n = H.n
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[free] = 1
        for row, p in enumerate(pivots):
            v[p] = int(a[row, free])
        basis.append(tuple(v))
    return basis


def code_parameters(H: BinaryMatrix) -> tuple[int, int, int]:
    """(n, k, d) of the code; d = 0 for the trivial code."""
    basis = nullspace_gf2(H)
    k = len(basis)
    if k == 0:
        return H.n, 0, 0
    if k > MAX_ENUM_DIMENSION:
        raise ContractError(f"code dimension {k} is too large to enumerate", code="code.too_large")
    masks = [sum(bit << i for i, bit in enumerate(v)) for v in basis]
    best = H.n
    word = 0
    for step in range(1, 1 << k):
        word ^= masks[(step & -step).bit_length() - 1]
        best = min(best, word.bit_count())
    return H.n, k, best


# ── Rational elimination ────────────────────────────────────────


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


def _as_integer_rows(rows: Sequence[Sequence[Union[int, Fraction]]]) -> list[list[int]]:
    out = []
    for row in rows:
        if all(type(x) is int for x in row):
            out.append(list(row))
            continue
        scale = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * scale) for x in row])
    return out


def integer_rref(rows: Sequence[Sequence[Union[int, Fraction]]]) -> tuple[list[list[int]], list[int]]:
    """Gauss-Jordan form with integer row operations.

    Every returned row is primitive (entries coprime); pivot entries need not
    be 1. Returns the nonzero rows and their pivot columns.
    """
    a = _as_integer_rows(rows)
    n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv_row = a[r] = _primitive(a[r])
        piv = piv_row[c]
        for i in range(len(a)):
            f = a[i][c]
            if i == r or not f:
                continue
            a[i] = _primitive([piv * x - f * y for x, y in zip(a[i], piv_row)])
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_rational(M: Union[AnyMatrix, Sequence[Sequence[Union[int, Fraction]]]]) -> int:
    """Rank over the rationals, exact."""
    rows = _int_rows(M)[0] if isinstance(M, (BinaryMatrix, IntMatrix)) else M
    return len(integer_rref(rows)[1])


def nullspace_rational(M: Union[AnyMatrix, Sequence[Sequence[Union[int, Fraction]]]], n_cols: Optional[int] = None) -> list[IntVector]:
    """Primitive integer basis of the rational kernel of M."""
    if isinstance(M, (BinaryMatrix, IntMatrix)):
        rows, n_cols = _int_rows(M)
    else:
        rows = M
        n_cols = n_cols if n_cols is not None else (len(rows[0]) if rows else 0)
    reduced, pivots = integer_rref(rows)
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        scale = math.lcm(*(row[p] for row, p in zip(reduced, pivots) if row[free])) if reduced else 1
        v = [0] * n_cols
        v[free] = scale
        for row, p in zip(reduced, pivots):
            if row[free]:
                v[p] = -row[free] * scale // row[p]
        v = _primitive(v)
        basis.append(tuple(v))
    return basis
