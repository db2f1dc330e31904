"""Convert parity-check matrices to and from the alist format.

Layout: "n m", "max_col_deg max_row_deg", the n column degrees, the m row
degrees, then one line per column with its 1-based row indices and one line
per row with its 1-based column indices. Zero entries are padding.
"""

from __future__ import annotations

import numpy as np

from ..algebra.errors import ParseError
from ..algebra.gf2core import BinaryMatrix


class AlistConverter:
    """Read and write alist text."""

    @staticmethod
    def parse(text: str) -> BinaryMatrix:
        lines = [(no, line.split()) for no, line in enumerate(text.splitlines(), start=1) if line.strip()]
        cursor = 0

        def take(section: str) -> tuple[int, list[int]]:
            nonlocal cursor
            if cursor >= len(lines):
                raise ParseError(f"missing {section}", line=(lines[-1][0] + 1) if lines else 1)
            no, tokens = lines[cursor]
            cursor += 1
            try:
                return no, [int(t) for t in tokens]
            except ValueError:
                raise ParseError(f"non-integer token in {section}", line=no) from None

        no, header = take("header line 'n m'")
        if len(header) != 2 or min(header) < 0:
            raise ParseError("header must be 'n m'", line=no)
        n, m = header
        max_no, max_deg = take("maximum-degree line")
        if len(max_deg) != 2:
            raise ParseError("maximum-degree line must hold two numbers", line=max_no)
        no, col_deg = take("column-degree line") if n else (max_no, [])
        if len(col_deg) != n:
            raise ParseError(f"expected {n} column degrees, got {len(col_deg)}", line=no)
        no, row_deg = take("row-degree line") if m else (no, [])
        if len(row_deg) != m:
            raise ParseError(f"expected {m} row degrees, got {len(row_deg)}", line=no)
        if max_deg != [max(col_deg, default=0), max(row_deg, default=0)]:
            raise ParseError(
                f"maximum degrees {max_deg[0]} {max_deg[1]} do not match the degree lists "
                f"({max(col_deg, default=0)} {max(row_deg, default=0)})",
                line=max_no,
            )

        by_cols = np.zeros((m, n), dtype=np.uint8)
        for i in range(n):
            no, entries = take(f"column section (column {i + 1} of {n})")
            rows = [x for x in entries if x != 0]
            if len(rows) != col_deg[i]:
                raise ParseError(f"column {i + 1} lists {len(rows)} rows, degree says {col_deg[i]}", line=no)
            for r in rows:
                if not 1 <= r <= m:
                    raise ParseError(f"row index {r} out of range 1..{m}", line=no)
                by_cols[r - 1, i] = 1

        by_rows = np.zeros((m, n), dtype=np.uint8)
        for j in range(m):
            no, entries = take(f"row section (row {j + 1} of {m})")
            cols = [x for x in entries if x != 0]
            if len(cols) != row_deg[j]:
                raise ParseError(f"row {j + 1} lists {len(cols)} columns, degree says {row_deg[j]}", line=no)
            for c in cols:
                if not 1 <= c <= n:
                    raise ParseError(f"column index {c} out of range 1..{n}", line=no)
                by_rows[j, c - 1] = 1

        if not np.array_equal(by_cols, by_rows):
            raise ParseError("column and row sections disagree", line=no)
        if by_cols.sum() != sum(col_deg):
            raise ParseError("column section repeats an index", line=no)
        return BinaryMatrix(by_cols)

    @staticmethod
    def write(H: BinaryMatrix) -> str:
        cols = [H.column_support(i) for i in range(H.n)]
        rows = [H.row_support(j) for j in range(H.m)]
        max_col = max((len(c) for c in cols), default=0)
        max_row = max((len(r) for r in rows), default=0)

        def padded(indices: list[int], width: int) -> str:
            tokens = [str(x + 1) for x in indices] + ["0"] * (width - len(indices))
            return " ".join(tokens) or "0"

        out = [
            f"{H.n} {H.m}",
            f"{max_col} {max_row}",
            " ".join(str(len(c)) for c in cols),
            " ".join(str(len(r)) for r in rows),
        ]
        out.extend(padded(c, max_col) for c in cols)
        out.extend(padded(r, max_row) for r in rows)
        return "\n".join(out) + "\n"


parse_alist = AlistConverter.parse
write_alist = AlistConverter.write
