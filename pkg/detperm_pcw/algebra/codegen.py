"""Generators for the example codes and random LDPC experiments."""

from __future__ import annotations

import logging
from typing import Iterator

import numpy as np

from .errors import BudgetExhaustedError, ContractError
from .gf2core import BinaryMatrix
from .tanner import four_cycle_count
from .types import LdpcSpec

logger = logging.getLogger("pcw.codegen")

DEFAULT_RETRY_BUDGET = 1000
DEFAULT_SWAP_BUDGET = 20000


def example_h422() -> BinaryMatrix:
    """The [4,2,2] code with H = [1 1 1 0; 0 1 1 1]."""
    return BinaryMatrix([[1, 1, 1, 0], [0, 1, 1, 1]])


def dumbbell(k: int) -> BinaryMatrix:
    """Two k-bit/k-check cycles joined by a bridge bit.

    Bits 0..k-1 and checks 0..k-1 form the first cycle, bits k+1..2k and
    checks k..2k-1 the second. Bridge bit k sits on check k-1 and check k,
    so those two checks have degree 3 and every bit has degree 2.
    """
    if k < 3:
        raise ContractError(f"dumbbell cycles need k >= 3, got {k}", code="dumbbell.size")
    h = np.zeros((2 * k, 2 * k + 1), dtype=np.uint8)
    for c in range(k):
        h[c, c] = h[c, (c + 1) % k] = 1
        h[k + c, k + 1 + c] = h[k + c, k + 1 + (c + 1) % k] = 1
    h[k - 1, k] = h[k, k] = 1
    return BinaryMatrix(h)


def _has_parallel_edges(checks: np.ndarray, bits: np.ndarray, n: int) -> bool:
    keys = checks.astype(np.int64) * n + bits
    return np.unique(keys).size != keys.size


def random_regular_ldpc(spec: LdpcSpec, budget: int = DEFAULT_RETRY_BUDGET) -> BinaryMatrix:
    """Configuration-model (dv, dc)-regular matrix; pairings with double edges are redrawn."""
    rng = np.random.default_rng(spec.seed)
    bit_sockets = np.repeat(np.arange(spec.n), spec.dv)
    check_sockets = np.repeat(np.arange(spec.m), spec.dc)
    for attempt in range(1, budget + 1):
        bits = rng.permutation(bit_sockets)
        if _has_parallel_edges(check_sockets, bits, spec.n):
            continue
        h = np.zeros((spec.m, spec.n), dtype=np.uint8)
        h[check_sockets, bits] = 1
        logger.debug("Accepted (%d,%d)-regular pairing after %d attempts", spec.dv, spec.dc, attempt)
        return BinaryMatrix(h)
    raise BudgetExhaustedError(f"no simple pairing found in {budget} attempts")


def four_cycle_swaps(
    H: BinaryMatrix, seed: int = 0, max_iters: int = DEFAULT_SWAP_BUDGET
) -> Iterator[tuple[int, BinaryMatrix, int]]:
    """Yield (attempt, matrix, four-cycle count) after every kept double-edge swap.

    A swap (j,i),(j',i') -> (j,i'),(j',i) is kept when it creates no double
    edge and does not raise the four-cycle count. Stops once the count hits
    zero or after ``max_iters`` attempts.
    """
    rng = np.random.default_rng(seed)
    h = H.bits.copy()
    current = four_cycle_count(H)
    for step in range(max_iters):
        if current == 0:
            return
        checks, bits = np.nonzero(h)
        a, b = rng.choice(checks.size, size=2, replace=False)
        j, i, j2, i2 = checks[a], bits[a], checks[b], bits[b]
        if j == j2 or i == i2 or h[j, i2] or h[j2, i]:
            continue
        h[j, i] = h[j2, i2] = 0
        h[j, i2] = h[j2, i] = 1
        count = four_cycle_count(BinaryMatrix(h))
        if count <= current:
            current = count
            yield step, BinaryMatrix(h), count
        else:
            h[j, i2] = h[j2, i] = 0
            h[j, i] = h[j2, i2] = 1


def remove_four_cycles(H: BinaryMatrix, seed: int = 0, max_iters: int = DEFAULT_SWAP_BUDGET) -> BinaryMatrix:
    """Degree-preserving double-edge swaps until the Tanner graph has girth >= 6."""
    best, current = H, four_cycle_count(H)
    log = logger.getChild(str(seed))
    log.debug("Starting with %d four-cycles", current)
    for step, best, current in four_cycle_swaps(H, seed, max_iters):
        if current == 0:
            log.info("Four-cycle free after %d swap attempts", step + 1)
    if current == 0:
        return best
    raise BudgetExhaustedError(f"{current} four-cycles left after {max_iters} swap attempts", best=best)


def random_tree_code(n: int, m: int, seed: int = 0) -> BinaryMatrix:
    """An m×n matrix whose Tanner graph is a random spanning tree.

    Nodes are added one at a time, each attached to a random existing node
    of the other kind, so the graph stays connected and acyclic.
    """
    if n < 1 or m < 1 or n <= m:
        raise ContractError(f"need 1 <= m < n, got m={m}, n={n}", code="tree.size")
    rng = np.random.default_rng(seed)
    h = np.zeros((m, n), dtype=np.uint8)
    h[0, 0] = 1
    bits, checks = [0], [0]
    pending = [("x", i) for i in range(1, n)] + [("c", j) for j in range(1, m)]
    for idx in rng.permutation(len(pending)):
        kind, node = pending[idx]
        if kind == "x":
            h[checks[rng.integers(len(checks))], node] = 1
            bits.append(node)
        else:
            h[node, bits[rng.integers(len(bits))]] = 1
            checks.append(node)
    return BinaryMatrix(h)
