"""Gaussian graphical model whose conditional spreads recover absdet entries.

The model is p(u) ~ exp(-u^T G u / 2) with G = eps^2 I + H^T H. Conditioned on
the bits outside S, the product gamma^2 * sigma_i^2 equals
det(eps^2 I + H_{S\\i}^T H_{S\\i}), which tends to det(H_{S\\i})^2 as eps -> 0.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy
from scipy import linalg

from .errors import ContractError
from .gf2core import BinaryMatrix
from .pcw import absdet_pcw, check_subset
from .types import BitLimitRecord, ColumnSubset, GaussianLimitReport

logger = logging.getLogger("pcw.gaussian")

DEFAULT_SCHEDULE = (1e-1, 1e-2, 1e-3, 1e-4)
DEFAULT_RTOL = 1e-6
# products for zero targets decay like c * eps^2 with c up to a few hundred
DEFAULT_ZERO_ATOL = 1e-5

_TWO_PI_E = 2 * math.pi * math.e


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise ContractError(f"epsilon must be positive, got {eps}", code="gaussian.epsilon")


def _cholesky(H: BinaryMatrix, S: ColumnSubset, eps: float) -> tuple[np.ndarray, bool]:
    _check_eps(eps)
    check_subset(H, S)
    h_s = H.bits[:, list(S.indices)].astype(float)
    precision = eps * eps * np.eye(len(S)) + h_s.T @ h_s
    try:
        return linalg.cho_factor(precision, lower=True)
    except linalg.LinAlgError as e:
        raise ContractError(f"precision matrix not positive definite at eps={eps}", code="internal.cholesky") from e


def conditional_cov(H: BinaryMatrix, S: ColumnSubset, eps: float) -> np.ndarray:
    """R_{S|S-bar}: covariance of U_S given the bits outside S."""
    factor = _cholesky(H, S, eps)
    return linalg.cho_solve(factor, np.eye(len(S)))


def gamma_sq(H: BinaryMatrix, S: ColumnSubset, eps: float) -> float:
    """det(eps^2 I + H_S^T H_S)."""
    chol, _ = _cholesky(H, S, eps)
    return float(np.prod(np.diag(chol)) ** 2)


def limit_products(H: BinaryMatrix, S: ColumnSubset, eps: float) -> list[float]:
    """gamma^2 * sigma_i^2 for every i in S, in subset order."""
    factor = _cholesky(H, S, eps)
    cov = linalg.cho_solve(factor, np.eye(len(S)))
    g2 = float(np.prod(np.diag(factor[0])) ** 2)
    return [g2 * float(cov[p, p]) for p in range(len(S))]


def _check_schedule(schedule: Sequence[float]) -> list[float]:
    schedule = [float(e) for e in schedule]
    if not schedule or any(not e > 0 for e in schedule):
        raise ContractError("epsilon schedule must be non-empty and positive", code="gaussian.schedule")
    if any(a <= b for a, b in zip(schedule, schedule[1:])):
        raise ContractError("epsilon schedule must be strictly decreasing", code="gaussian.schedule")
    return schedule


def verify_gaussian_limit(
    H: BinaryMatrix,
    S: ColumnSubset,
    schedule: Sequence[float] = DEFAULT_SCHEDULE,
    tol: float = DEFAULT_RTOL,
    zero_atol: float = DEFAULT_ZERO_ATOL,
) -> GaussianLimitReport:
    """Track gamma^2 sigma_i^2 along the schedule against omega_i^2.

    Bits outside S are predicted perfectly from U_{S-bar}, so their
    conditional variance and target are both 0.
    """
    schedule = _check_schedule(schedule)
    if not tol > 0:
        raise ContractError(f"tolerance must be positive, got {tol}", code="gaussian.tolerance")
    omega = absdet_pcw(H, S)
    per_eps = [limit_products(H, S, eps) for eps in schedule]
    records = []
    for i in range(H.n):
        if i not in S:
            records.append(
                BitLimitRecord(
                    bit=i, in_subset=False, target=0, products=[0.0] * len(schedule), converged=True, error=0.0
                )
            )
            continue
        pos = S.eta(i)
        target = omega[i] * omega[i]
        products = [row[pos] for row in per_eps]
        if target:
            error = abs(products[-1] - target) / target
            converged = error <= tol
        else:
            error = abs(products[-1])
            converged = error <= zero_atol
        records.append(
            BitLimitRecord(bit=i, in_subset=True, target=target, products=products, converged=converged, error=error)
        )
    report = GaussianLimitReport(schedule=schedule, records=records)
    logger.info(
        "Gaussian limit for subset %s: converged=%s, max error %.3g", S, report.converged, report.max_error
    )
    return report


def entropy_form(H: BinaryMatrix, S: ColumnSubset, i: int, eps: float) -> float:
    """gamma' * exp(h(U_i | U_{S-bar})) with gamma' = gamma / sqrt(2 pi e)."""
    if i not in S:
        raise ContractError(f"bit {i} is not in the subset", code="gaussian.bit")
    variance = float(conditional_cov(H, S, eps)[S.eta(i), S.eta(i)])
    entropy = 0.5 * math.log(_TWO_PI_E * variance)
    gamma_prime = math.sqrt(gamma_sq(H, S, eps)) / math.sqrt(_TWO_PI_E)
    return gamma_prime * math.exp(entropy)


# ── Exact oracle ────────────────────────────────────────────────


def exact_product_poly(H: BinaryMatrix, S: ColumnSubset, i: int) -> list[int]:
    """Coefficients c_k of det(t I + A) = sum c_k t^k, A = H_{S\\i}^T H_{S\\i}.

    det(t I + A) is the characteristic polynomial of -A, taken exactly by sympy.
    """
    check_subset(H, S)
    if i not in S:
        raise ContractError(f"bit {i} is not in the subset", code="gaussian.bit")
    h = H.bits[:, list(S.without(i))].astype(np.int64)
    gram = h.T @ h
    if gram.shape[0] == 0:
        return [1]
    poly = sympy.Matrix(-gram).charpoly(sympy.Symbol("t"))
    return [int(c) for c in reversed(poly.all_coeffs())]


def exact_product(H: BinaryMatrix, S: ColumnSubset, i: int, eps: float) -> float:
    _check_eps(eps)
    t = Fraction(eps) ** 2
    return float(sum(c * t**k for k, c in enumerate(exact_product_poly(H, S, i))))
