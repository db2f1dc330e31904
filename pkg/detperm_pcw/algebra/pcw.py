"""Det-vectors, absdet-pseudo-codewords and perm-pseudo-codewords.

For a size-(m+1) column subset S of H, each bit i in S gets the determinant
(or permanent) of H with the columns S \\ {i}; bits outside S get 0.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from .errors import ContractError, ShapeError
from .gf2core import (
    PERM_MAX_DIM,
    BinaryMatrix,
    IntMatrix,
    IntVector,
    det_int,
    nullspace_rational,
    perm_int,
)
from .types import ColumnSubset, VectorKind

logger = logging.getLogger("pcw.vectors")


def enumerate_subsets(n: int, k: int) -> Iterator[ColumnSubset]:
    """All size-k subsets of range(n), lexicographically."""
    if not 0 <= k <= n:
        raise ContractError(f"cannot choose {k} of {n} columns", code="subset.size")
    for combo in itertools.combinations(range(n), k):
        yield ColumnSubset(indices=combo)


def check_subset(H: BinaryMatrix, S: ColumnSubset) -> None:
    if H.m >= H.n:
        raise ContractError(f"need m < n, got a {H.m}x{H.n} matrix", code="matrix.not_wide")
    if len(S) != H.m + 1:
        raise ContractError(f"subset has {len(S)} columns, expected m+1 = {H.m + 1}", code="subset.size")
    if S.indices[-1] >= H.n:
        raise ShapeError(f"column {S.indices[-1]} outside 0..{H.n - 1}", code="index.out_of_range")


def _columns(H: BinaryMatrix, cols: Sequence[int]) -> list[list[int]]:
    bits = H.bits
    return [[int(bits[j, i]) for i in cols] for j in range(H.m)]


def _det_vector_minors(H: BinaryMatrix, S: ColumnSubset) -> IntVector:
    nu = [0] * H.n
    for pos, i in enumerate(S.indices):
        d = det_int(IntMatrix(_columns(H, S.without(i)), n_cols=H.m))
        nu[i] = -d if pos & 1 else d
    return tuple(nu)


def _det_vector_kernel(H: BinaryMatrix, S: ColumnSubset) -> IntVector:
    # nu spans the kernel of H_S whenever rank(H_S) = m, so one minor fixes the scale
    h_s = _columns(H, S.indices)
    nu = [0] * H.n
    basis = nullspace_rational(h_s, n_cols=len(S))
    if len(basis) != 1:
        # rank(H_S) < m: every maximal minor vanishes
        logger.debug("H_S is rank-deficient for subset %s", S)
        return tuple(nu)
    kernel = basis[0]
    pos = next(p for p, x in enumerate(kernel) if x)
    minor = det_int(IntMatrix([row[:pos] + row[pos + 1:] for row in h_s], n_cols=H.m))
    anchor = -minor if pos & 1 else minor
    scale, rem = divmod(anchor, kernel[pos])
    if rem or not scale:
        raise ContractError(f"kernel scaling failed on subset {S}", code="internal.kernel")
    for p, i in enumerate(S.indices):
        nu[i] = scale * kernel[p]
    return tuple(nu)


def det_vector(H: BinaryMatrix, S: ColumnSubset, method: str = "kernel") -> IntVector:
    """nu_i = (-1)^eta_S(i) * det(H_{S\\i}) for i in S, 0 elsewhere.

    ``method="minors"`` evaluates the definition term by term; ``"kernel"``
    finds the primitive kernel vector of H_S and scales it with a single
    determinant. Both give the same vector.
    """
    check_subset(H, S)
    if method == "minors":
        return _det_vector_minors(H, S)
    if method == "kernel":
        return _det_vector_kernel(H, S)
    raise ContractError(f"unknown det-vector method {method!r}", code="method.unknown")


def absdet_pcw(H: BinaryMatrix, S: ColumnSubset, method: str = "kernel") -> IntVector:
    return tuple(abs(x) for x in det_vector(H, S, method))


def perm_pcw(H: BinaryMatrix, S: ColumnSubset, max_dim: int = PERM_MAX_DIM) -> IntVector:
    check_subset(H, S)
    omega = [0] * H.n
    for i in S.indices:
        omega[i] = perm_int(IntMatrix(_columns(H, S.without(i)), n_cols=H.m), max_dim)
    return tuple(omega)


BUILDERS: dict[VectorKind, Callable[[BinaryMatrix, ColumnSubset], IntVector]] = {
    VectorKind.DET: det_vector,
    VectorKind.ABSDET: absdet_pcw,
    VectorKind.PERM: perm_pcw,
}


def build_vector(H: BinaryMatrix, S: ColumnSubset, kind: VectorKind) -> IntVector:
    return BUILDERS[kind](H, S)


def _check_length(H: BinaryMatrix, v: Sequence[object]) -> None:
    if len(v) != H.n:
        raise ShapeError(f"vector has length {len(v)}, matrix has {H.n} columns", code="shape.length")


def z_syndrome(H: BinaryMatrix, v: Sequence[int]) -> IntVector:
    """H * v^T over the integers."""
    _check_length(H, v)
    return tuple(sum(v[i] for i in H.row_support(j)) for j in range(H.m))


def mod2_reduce(v: Sequence[int]) -> IntVector:
    return tuple(x % 2 for x in v)


def is_codeword(H: BinaryMatrix, c: Sequence[int]) -> bool:
    _check_length(H, c)
    return all(sum(c[i] for i in H.row_support(j)) % 2 == 0 for j in range(H.m))


def equation_system_pcw(nu: Sequence[Union[int, Fraction]]) -> tuple[Union[int, Fraction], ...]:
    """Componentwise |nu|; lies in the cone whenever H nu^T = 0 over Q."""
    return tuple(abs(x) for x in nu)
