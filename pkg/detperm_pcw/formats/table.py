"""CSV tables for batch results, histograms, cone verdicts and Gaussian limits."""

from __future__ import annotations

import csv
import io
from typing import Any, Iterable, Optional, Sequence

from ..algebra.errors import ParseError
from ..algebra.gf2core import IntVector
from ..algebra.types import (
    ColumnSubset,
    ConeReport,
    GaussianLimitReport,
    PcwClass,
    VectorRecord,
    WeightHistogram,
)

RECORD_FIELDS = ["subset", "vector", "is_unscaled_pcw", "pseudo_weight", "is_zero"]
HISTOGRAM_FIELDS = ["edge", "cumulative_count"]
GAUSSIAN_FIELDS = ["i", "epsilon", "product", "target", "relative_error"]
CONSTRAINT_FIELDS = ["status", "kind", "check", "bit"]


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _ints(values: Sequence[int]) -> str:
    return " ".join(str(x) for x in values)


def _write(fieldnames: list[str], rows: Iterable[dict[str, Any]], header: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(f"# {line}\n")
    w = csv.DictWriter(buf, fieldnames=fieldnames, quoting=csv.QUOTE_ALL, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


# ── Batch records ───────────────────────────────────────────────


def write_records(records: Iterable[VectorRecord], with_minimal: bool = False) -> str:
    fields = RECORD_FIELDS + (["is_minimal"] if with_minimal else [])

    def row(r: VectorRecord) -> dict[str, Any]:
        out = {
            "subset": str(r.subset),
            "vector": _ints(r.vector),
            "is_unscaled_pcw": _flag(r.is_unscaled_pcw),
            "pseudo_weight": f"{float(r.weight):.12f}",
            "is_zero": _flag(r.is_zero),
        }
        if with_minimal:
            out["is_minimal"] = "" if r.minimal is None else _flag(r.minimal)
        return out

    return _write(fields, (row(r) for r in records))


def read_records(text: str) -> list[tuple[Optional[ColumnSubset], IntVector]]:
    """Subsets and vectors back out of a records table.

    Comment lines are skipped; the subset column is optional.
    """
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or "vector" not in reader.fieldnames:
        raise ParseError("records table has no 'vector' column", line=1)
    out = []
    for no, row in enumerate(reader, start=2):
        try:
            vector = tuple(int(x) for x in row["vector"].split())
            subset_text = row.get("subset") or ""
            subset = ColumnSubset.of([int(x) for x in subset_text.split()]) if subset_text.strip() else None
        except (ValueError, AttributeError):
            raise ParseError("malformed subset or vector cell", line=no) from None
        out.append((subset, vector))
    return out


# ── Histograms ──────────────────────────────────────────────────


def write_histogram(hist: WeightHistogram) -> str:
    rows = ({"edge": f"{e:g}", "cumulative_count": c} for e, c in zip(hist.edges, hist.counts))
    return _write(HISTOGRAM_FIELDS, rows, header=[f"zero_count={hist.zero_count}", f"total={hist.total}"])


def write_gnuplot(hist: WeightHistogram) -> str:
    """Two whitespace-separated columns, comments for the zero count."""
    lines = [f"# zero_count={hist.zero_count}", "# edge cumulative_count"]
    lines.extend(f"{e:g} {c}" for e, c in zip(hist.edges, hist.counts))
    return "\n".join(lines) + "\n"


# ── Cone verdicts ───────────────────────────────────────────────


def write_cone_report(report: ConeReport) -> str:
    def rows():
        for status, constraints in (("violated", report.violated), ("active", report.active)):
            for c in constraints:
                yield {
                    "status": status,
                    "kind": c.kind.value,
                    "check": "" if c.check is None else c.check,
                    "bit": c.bit,
                }

    return _write(CONSTRAINT_FIELDS, rows(), header=[f"member={_flag(report.member)}"])


def render_cone_report(
    vector: Sequence[int],
    report: ConeReport,
    minimal: Optional[bool] = None,
    kind: Optional[PcwClass] = None,
) -> str:
    lines = [f"vector: {_ints(vector)}"]
    lines.append("member of the fundamental cone" if report.member else "NOT in the fundamental cone")
    if report.violated:
        lines.append("violated: " + ", ".join(str(c) for c in report.violated))
    lines.append("active: " + (", ".join(str(c) for c in report.active) or "none"))
    if all(x == 0 for x in vector):
        lines.append("zero vector")
    if minimal is not None:
        lines.append(f"minimal: {'yes' if minimal else 'no'}")
    if kind is not None:
        lines.append(f"class: {kind.value}")
    return "\n".join(lines) + "\n"


# ── Gaussian limits ─────────────────────────────────────────────


def write_gaussian(report: GaussianLimitReport) -> str:
    def rows():
        for rec in report.records:
            for eps, product in zip(report.schedule, rec.products):
                if rec.target:
                    error = abs(product - rec.target) / rec.target
                else:
                    error = abs(product)
                yield {
                    "i": rec.bit,
                    "epsilon": f"{eps:g}",
                    "product": f"{product:.12e}",
                    "target": rec.target,
                    "relative_error": f"{error:.6e}",
                }

    return _write(GAUSSIAN_FIELDS, rows(), header=[f"converged={_flag(report.converged)}"])
