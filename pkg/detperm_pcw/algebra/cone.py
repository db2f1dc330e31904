"""Fundamental-cone geometry: membership, minimality and pseudo-weights."""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import ContractError, ShapeError
from .gf2core import BinaryMatrix, rank_rational
from .pcw import is_codeword, mod2_reduce
from .types import ConeReport, Constraint, ConstraintKind, PcwClass, PseudoWeight, WeightHistogram

logger = logging.getLogger("pcw.cone")

Number = Union[int, Fraction]


def _exact(w: Sequence[Union[Number, float]]) -> list[Number]:
    return [x if isinstance(x, (int, Fraction)) else Fraction(x) for x in w]


def iter_constraints(H: BinaryMatrix) -> Iterator[Constraint]:
    """Every inequality of K(H): nonnegativity first, then parity per check."""
    for i in range(H.n):
        yield Constraint(kind=ConstraintKind.NONNEG, bit=i)
    for j in range(H.m):
        for i in H.row_support(j):
            yield Constraint(kind=ConstraintKind.PARITY, bit=i, check=j)


def in_fundamental_cone(H: BinaryMatrix, w: Sequence[Union[Number, float]]) -> ConeReport:
    if len(w) != H.n:
        raise ShapeError(f"vector has length {len(w)}, matrix has {H.n} columns", code="shape.length")
    w = _exact(w)
    violated: list[Constraint] = []
    active: list[Constraint] = []
    for i, x in enumerate(w):
        if x < 0:
            violated.append(Constraint(kind=ConstraintKind.NONNEG, bit=i))
        elif x == 0:
            active.append(Constraint(kind=ConstraintKind.NONNEG, bit=i))
    for j in range(H.m):
        support = H.row_support(j)
        total = sum(w[i] for i in support)
        for i in support:
            # omega_i <= total - omega_i
            slack = total - 2 * w[i]
            if slack < 0:
                violated.append(Constraint(kind=ConstraintKind.PARITY, bit=i, check=j))
            elif slack == 0:
                active.append(Constraint(kind=ConstraintKind.PARITY, bit=i, check=j))
    return ConeReport(member=not violated, violated=violated, active=active)


def is_unscaled_pcw(H: BinaryMatrix, w: Sequence[int]) -> bool:
    if any(not isinstance(x, int) for x in w):
        raise ContractError("unscaled pseudo-codewords have integer entries", code="vector.not_integer")
    return in_fundamental_cone(H, w).member and is_codeword(H, mod2_reduce(w))


def awgnc_pseudoweight(w: Sequence[Union[Number, float]]) -> PseudoWeight:
    """||w||_1^2 / ||w||_2^2, exact."""
    w = _exact(w)
    if any(x < 0 for x in w):
        raise ContractError("pseudo-weight needs a nonnegative vector", code="vector.negative")
    l2 = sum(x * x for x in w)
    if not l2:
        return PseudoWeight(value=Fraction(0), is_zero=True)
    l1 = sum(w)
    return PseudoWeight(value=Fraction(l1 * l1) / l2)


def constraint_normal(H: BinaryMatrix, c: Constraint) -> list[int]:
    """Normal vector a with the constraint written as a . w >= 0."""
    normal = [0] * H.n
    if c.kind is ConstraintKind.NONNEG:
        normal[c.bit] = 1
        return normal
    for i in H.row_support(c.check):
        normal[i] = 1
    normal[c.bit] = -1
    return normal


def is_minimal_pcw(H: BinaryMatrix, w: Sequence[Union[Number, float]]) -> bool:
    """True iff w lies on an edge (extreme ray) of K(H).

    The tight constraints at an edge point cut out a line, so their normals
    span a space of dimension n-1.
    """
    report = in_fundamental_cone(H, w)
    if not report.member:
        raise ContractError("vector is not in the fundamental cone", code="cone.not_member")
    if all(x == 0 for x in w):
        raise ContractError("the zero vector is not on an edge", code="cone.zero")
    normals = [constraint_normal(H, c) for c in report.active]
    rank = rank_rational(normals) if normals else 0
    logger.debug("%d active constraints, rank %d of %d needed", len(normals), rank, H.n - 1)
    return rank == H.n - 1


def classify_pcw(H: BinaryMatrix, w: Sequence[int]) -> PcwClass:
    """Zero, codeword-type, minimal (non-codeword) or plain pseudo-codeword."""
    if all(x == 0 for x in w):
        return PcwClass.ZERO
    g = math.gcd(*w)
    unit = [x // g for x in w]
    if all(x in (0, 1) for x in unit) and is_codeword(H, unit):
        return PcwClass.CODEWORD
    if is_minimal_pcw(H, w):
        return PcwClass.MINIMAL
    return PcwClass.PSEUDO


# ── Histograms ──────────────────────────────────────────────────


def _checked_edges(edges: Sequence[float]) -> list[float]:
    edges = [float(e) for e in edges]
    if any(a >= b for a, b in zip(edges, edges[1:])):
        raise ContractError("histogram edges must be strictly increasing", code="histogram.edges")
    return edges


def cumulative_histogram(weights: Iterable[PseudoWeight], edges: Sequence[float]) -> WeightHistogram:
    """Count nonzero-vector weights <= each edge; zero vectors go to zero_count."""
    edges = _checked_edges(edges)
    values = []
    zero_count = 0
    for pw in weights:
        if pw.is_zero:
            zero_count += 1
        else:
            values.append(float(pw))
    values.sort()
    counts = np.searchsorted(np.asarray(values, dtype=float), np.asarray(edges, dtype=float), side="right")
    return WeightHistogram(
        edges=edges,
        counts=[int(c) for c in counts],
        zero_count=zero_count,
        total=len(values),
    )


def merge_histograms(a: WeightHistogram, b: WeightHistogram) -> WeightHistogram:
    if a.edges != b.edges:
        raise ContractError("cannot merge histograms with different edges", code="histogram.edges")
    return WeightHistogram(
        edges=list(a.edges),
        counts=[x + y for x, y in zip(a.counts, b.counts)],
        zero_count=a.zero_count + b.zero_count,
        total=a.total + b.total,
    )
