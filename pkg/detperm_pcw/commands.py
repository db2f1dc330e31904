"""Command implementations behind the CLI.

Each cmd_* takes a validated RunConfig, writes its table to ``cfg.out`` (or
stdout) and returns the text it wrote.
"""

from __future__ import annotations

import asyncio
import functools
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from .algebra.codegen import dumbbell, example_h422, random_regular_ldpc, random_tree_code, remove_four_cycles
from .algebra.cone import (
    awgnc_pseudoweight,
    classify_pcw,
    cumulative_histogram,
    in_fundamental_cone,
    is_minimal_pcw,
    is_unscaled_pcw,
)
from .algebra.errors import BudgetExhaustedError, ConfigError, ContractError, ShapeError
from .algebra.gaussian import DEFAULT_SCHEDULE, verify_gaussian_limit
from .algebra.gf2core import BinaryMatrix
from .algebra.pcw import absdet_pcw, det_vector, enumerate_subsets, perm_pcw
from .algebra.types import ColumnSubset, LdpcSpec, VectorKind, VectorRecord
from .config import Generator, RunConfig
from .formats import (
    parse_alist,
    parse_dense,
    read_records,
    render_cone_report,
    write_alist,
    write_cone_report,
    write_dense,
    write_gaussian,
    write_gnuplot,
    write_histogram,
    write_records,
)

logger = logging.getLogger("pcw.compute")


# ── Input and output ────────────────────────────────────────────


def read_matrix(path: Path) -> BinaryMatrix:
    """Read ``.alist`` files as alist and everything else as dense 0/1 rows."""
    text = Path(path).read_text()
    if Path(path).suffix.lower() == ".alist":
        return parse_alist(text)
    return parse_dense(text)


def _emit(text: str, out: Optional[Path]) -> str:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        logger.info("Wrote %s", out)
    return text


# ── Batch computation ───────────────────────────────────────────


def _builder(kind: VectorKind, perm_max_dim: int):
    if kind is VectorKind.PERM:
        return functools.partial(perm_pcw, max_dim=perm_max_dim)
    return absdet_pcw if kind is VectorKind.ABSDET else det_vector


def _compute_block(
    H: BinaryMatrix, block: Sequence[ColumnSubset], kind: VectorKind, perm_max_dim: int, minimality: bool
) -> list[VectorRecord]:
    build = _builder(kind, perm_max_dim)
    records = []
    for S in block:
        try:
            vector = build(H, S)
        except (ContractError, ShapeError) as e:
            raise type(e)(f"subset {{{S}}}: {e.message}", code=e.code) from e
        unscaled = is_unscaled_pcw(H, vector)
        if kind.is_nonnegative and not unscaled:
            report = in_fundamental_cone(H, vector)
            raise ContractError(
                f"subset {{{S}}}: {kind.value} vector ({' '.join(map(str, vector))}) is not an unscaled "
                f"pseudo-codeword; violated: {', '.join(map(str, report.violated)) or 'none, mod-2 reduction'}",
                code="theorem.unscaled_pcw",
            )
        weight = awgnc_pseudoweight([abs(x) for x in vector])
        minimal = None
        if minimality and unscaled and not weight.is_zero:
            minimal = is_minimal_pcw(H, vector)
        records.append(
            VectorRecord(subset=S, vector=vector, is_unscaled_pcw=unscaled, weight=weight, minimal=minimal)
        )
    return records


async def compute_records(
    H: BinaryMatrix,
    subsets: Sequence[ColumnSubset],
    kind: VectorKind,
    threads: int = 1,
    block_size: int = 64,
    perm_max_dim: int = 24,
    minimality: bool = False,
) -> list[VectorRecord]:
    """Compute one record per subset on a thread pool, in input order.

    Subsets are cut into contiguous blocks; gather returns the blocks in
    submission order, so the result never depends on the thread count.
    """
    blocks = [subsets[p:p + block_size] for p in range(0, len(subsets), block_size)]
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="pcw") as pool:
        results = await asyncio.gather(
            *(
                loop.run_in_executor(pool, _compute_block, H, block, kind, perm_max_dim, minimality)
                for block in blocks
            )
        )
    return [record for block in results for record in block]


def dedupe_records(records: Sequence[VectorRecord]) -> list[VectorRecord]:
    """First record for every distinct vector, order kept."""
    seen: set[tuple[int, ...]] = set()
    out = []
    for r in records:
        if r.vector not in seen:
            seen.add(r.vector)
            out.append(r)
    return out


def _subsets(cfg: RunConfig, H: BinaryMatrix) -> list[ColumnSubset]:
    cfg.check_subsets(H.m, H.n)
    if cfg.subsets:
        return sorted(cfg.subsets, key=lambda s: s.indices)
    if H.m >= H.n:
        raise ContractError(f"need m < n, got a {H.m}x{H.n} matrix", code="matrix.not_wide")
    return list(enumerate_subsets(H.n, H.m + 1))


def _run_batch(cfg: RunConfig, H: BinaryMatrix) -> list[VectorRecord]:
    subsets = _subsets(cfg, H)
    log = logger.getChild(cfg.kind.value)
    log.info("Computing %d subsets of a %dx%d matrix on %d threads", len(subsets), H.m, H.n, cfg.threads)
    start = time.monotonic()
    records = asyncio.run(
        compute_records(H, subsets, cfg.kind, cfg.threads, cfg.block_size, cfg.perm_max_dim, cfg.minimality)
    )
    zeros = sum(1 for r in records if r.is_zero)
    log.info("Done in %.2fs: %d vectors, %d all-zero", time.monotonic() - start, len(records), zeros)
    return dedupe_records(records) if cfg.dedupe else records


def cmd_compute(cfg: RunConfig) -> str:
    H = read_matrix(cfg.matrix)
    records = _run_batch(cfg, H)
    return _emit(write_records(records, with_minimal=cfg.minimality), cfg.out)


def cmd_histogram(cfg: RunConfig) -> str:
    """Cumulative pseudo-weight histogram of a batch or of a saved records table."""
    if cfg.vectors is not None:
        vectors = [v for _, v in read_records(Path(cfg.vectors).read_text())]
        if cfg.dedupe:
            vectors = list(dict.fromkeys(vectors))
    else:
        vectors = [r.vector for r in _run_batch(cfg, read_matrix(cfg.matrix))]
    weights = [awgnc_pseudoweight([abs(x) for x in v]) for v in vectors]
    hist = cumulative_histogram(weights, cfg.edges)
    logger.info("Histogram over %d vectors, %d all-zero", len(weights), hist.zero_count)
    if cfg.gnuplot is not None:
        _emit(write_gnuplot(hist), cfg.gnuplot)
    return _emit(write_histogram(hist), cfg.out)


def cmd_check(cfg: RunConfig) -> str:
    """Cone verdict for one vector: readable text on stdout, constraint CSV to --out."""
    H = read_matrix(cfg.matrix)
    vector = list(cfg.vector)
    report = in_fundamental_cone(H, vector)
    minimal = kind = None
    if report.member and any(vector):
        minimal = is_minimal_pcw(H, vector)
        kind = classify_pcw(H, vector)
    text = render_cone_report(vector, report, minimal, kind)
    sys.stdout.write(text)
    if cfg.out is not None:
        _emit(write_cone_report(report), cfg.out)
    return text


def cmd_gaussian(cfg: RunConfig) -> str:
    H = read_matrix(cfg.matrix)
    cfg.check_subsets(H.m, H.n)
    schedule = cfg.eps or list(DEFAULT_SCHEDULE)
    report = verify_gaussian_limit(H, cfg.subsets[0], schedule, cfg.rtol, cfg.zero_atol)
    text = _emit(write_gaussian(report), cfg.out)
    if not report.converged:
        raise ContractError(
            f"products did not reach omega_i^2 (max error {report.max_error:.3g})", code="theorem.gaussian_limit"
        )
    return text


# ── Generators ──────────────────────────────────────────────────


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(cfg, name) is None]
    if missing:
        raise ConfigError(f"generator {cfg.generator.value} needs {', '.join(missing)}")


def _regular(cfg: RunConfig) -> BinaryMatrix:
    _require(cfg, "n", "dv", "dc")
    try:
        spec = LdpcSpec(n=cfg.n, dv=cfg.dv, dc=cfg.dc, seed=cfg.seed)
    except ValidationError as e:
        raise ConfigError("; ".join(err["msg"] for err in e.errors())) from None
    return random_regular_ldpc(spec, cfg.retry_budget)


def _write_matrix(H: BinaryMatrix, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(write_dense(H))
        return
    out = Path(out)
    _emit(write_alist(H), out.with_suffix(".alist"))
    _emit(write_dense(H), out.with_suffix(".txt"))


def cmd_generate(cfg: RunConfig) -> BinaryMatrix:
    """Build a matrix and write it as ``<out>.alist`` plus dense ``<out>.txt``."""
    gen = cfg.generator
    if gen is Generator.H422:
        H = example_h422()
    elif gen is Generator.DUMBBELL:
        H = dumbbell(cfg.k if cfg.k is not None else 3)
    elif gen is Generator.REGULAR:
        H = _regular(cfg)
    elif gen is Generator.TREE:
        _require(cfg, "n", "m")
        H = random_tree_code(cfg.n, cfg.m, cfg.seed)
    else:
        source = read_matrix(cfg.matrix) if cfg.matrix is not None else _regular(cfg)
        try:
            H = remove_four_cycles(source, cfg.seed, cfg.swap_budget)
        except BudgetExhaustedError as e:
            if e.best is not None:
                logger.warning("Writing the best matrix found before giving up")
                _write_matrix(e.best, cfg.out)
            raise
    logger.info("Generated a %dx%d %s matrix", H.m, H.n, gen.value)
    _write_matrix(H, cfg.out)
    return H
