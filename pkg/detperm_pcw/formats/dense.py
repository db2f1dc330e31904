"""Convert parity-check matrices to and from whitespace-separated 0/1 rows."""

from __future__ import annotations

from ..algebra.errors import ParseError
from ..algebra.gf2core import BinaryMatrix


class DenseConverter:
    @staticmethod
    def parse(text: str) -> BinaryMatrix:
        """One row per non-blank line; lines starting with '#' are comments."""
        rows: list[list[int]] = []
        width = None
        for no, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            bad = next((t for t in tokens if t not in ("0", "1")), None)
            if bad is not None:
                raise ParseError(f"non-binary token {bad!r}", line=no)
            if width is None:
                width = len(tokens)
            elif len(tokens) != width:
                raise ParseError(f"ragged row: {len(tokens)} entries, expected {width}", line=no)
            rows.append([int(t) for t in tokens])
        if not rows:
            raise ParseError("no matrix rows found", line=1)
        return BinaryMatrix(rows)

    @staticmethod
    def write(H: BinaryMatrix) -> str:
        return "".join(" ".join(str(int(x)) for x in row) + "\n" for row in H.bits)


parse_dense = DenseConverter.parse
write_dense = DenseConverter.write
