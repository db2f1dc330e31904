from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from detperm_pcw.algebra.cone import awgnc_pseudoweight, cumulative_histogram, in_fundamental_cone
from detperm_pcw.algebra.errors import ParseError
from detperm_pcw.algebra.gaussian import verify_gaussian_limit
from detperm_pcw.algebra.gf2core import BinaryMatrix
from detperm_pcw.algebra.types import ColumnSubset, PcwClass, VectorRecord
from detperm_pcw.formats import (
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

from strategies import wide_matrices

H422_ALIST = """4 2
2 3
1 2 2 1
3 3
1 0
1 2
1 2
2 0
1 2 3
2 3 4
"""


class TestAlist:
    def test_parse(self, h422):
        assert parse_alist(H422_ALIST) == h422

    def test_write(self, h422):
        assert write_alist(h422) == H422_ALIST

    @given(wide_matrices(max_m=6, max_extra=4))
    @settings(max_examples=50, deadline=None)
    def test_round_trip(self, H):
        assert parse_alist(write_alist(H)) == H

    def test_zero_matrix(self):
        Z = BinaryMatrix.zeros(2, 3)
        assert parse_alist(write_alist(Z)) == Z

    def test_truncated(self):
        text = "\n".join(H422_ALIST.splitlines()[:7])
        with pytest.raises(ParseError) as exc:
            parse_alist(text)
        assert "column section" in exc.value.message

    def test_missing_row_section(self):
        text = "\n".join(H422_ALIST.splitlines()[:9])
        with pytest.raises(ParseError) as exc:
            parse_alist(text)
        assert "row section (row 2 of 2)" in exc.value.message

    def test_index_out_of_range(self):
        text = H422_ALIST.replace("2 3 4\n", "2 3 5\n")
        with pytest.raises(ParseError) as exc:
            parse_alist(text)
        assert exc.value.line == 10

    def test_degree_mismatch(self):
        text = H422_ALIST.replace("1 2 2 1", "1 2 2 2")
        with pytest.raises(ParseError) as exc:
            parse_alist(text)
        assert exc.value.line == 8

    def test_sections_disagree(self):
        text = H422_ALIST.replace("1 2 3\n2 3 4", "1 2 4\n2 3 4")
        with pytest.raises(ParseError):
            parse_alist(text)

    @pytest.mark.parametrize("line", ["3 3", "2 2", "2 4"])
    def test_max_degree_line_checked(self, line):
        text = H422_ALIST.replace("4 2\n2 3\n", f"4 2\n{line}\n")
        with pytest.raises(ParseError) as exc:
            parse_alist(text)
        assert exc.value.line == 2
        assert "maximum degrees" in exc.value.message

    def test_bad_token(self):
        with pytest.raises(ParseError) as exc:
            parse_alist(H422_ALIST.replace("3 3", "3 x"))
        assert exc.value.line == 4


class TestDense:
    def test_parse(self, h422):
        assert parse_dense("1 1 1 0\n0 1 1 1") == h422

    def test_comments_and_blank_lines(self, h422):
        assert parse_dense("# H422\n\n1 1 1 0\n0 1 1 1\n\n") == h422

    def test_round_trip(self, dumbbell3):
        assert parse_dense(write_dense(dumbbell3)) == dumbbell3

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_dense("")

    def test_ragged(self):
        with pytest.raises(ParseError) as exc:
            parse_dense("1 0 1\n1 1\n")
        assert exc.value.line == 2

    def test_non_binary(self):
        with pytest.raises(ParseError) as exc:
            parse_dense("1 0\n2 1\n")
        assert exc.value.line == 2
        assert exc.value.exit_code == 1


def record(subset, vector, unscaled=True):
    return VectorRecord(
        subset=ColumnSubset.of(subset),
        vector=vector,
        is_unscaled_pcw=unscaled,
        weight=awgnc_pseudoweight(vector),
    )


class TestTables:
    def test_records(self):
        text = write_records([record([0, 1, 2], (0, 1, 1, 0)), record([1, 2, 3], (0, 0, 0, 0))])
        lines = text.splitlines()
        assert lines[0] == '"subset","vector","is_unscaled_pcw","pseudo_weight","is_zero"'
        assert lines[1] == '"0 1 2","0 1 1 0","true","2.000000000000","false"'
        assert lines[2] == '"1 2 3","0 0 0 0","true","0.000000000000","true"'

    def test_minimal_column(self):
        rec = record([0, 1, 2], (2, 1, 1, 0)).model_copy(update={"minimal": True})
        text = write_records([rec, record([1, 2, 3], (0, 0, 0, 0))], with_minimal=True)
        lines = text.splitlines()
        assert lines[0].endswith('"is_minimal"')
        assert lines[1].endswith('"true"')
        assert lines[2].endswith('""')

    def test_read_back(self):
        text = write_records([record([0, 1, 2], (0, 1, 1, 0)), record([0, 1, 3], (1, 1, 0, 1))])
        assert read_records(text) == [
            (ColumnSubset.of([0, 1, 2]), (0, 1, 1, 0)),
            (ColumnSubset.of([0, 1, 3]), (1, 1, 0, 1)),
        ]

    def test_read_needs_vector_column(self):
        with pytest.raises(ParseError):
            read_records("a,b\n1,2\n")

    def test_big_entries_survive(self):
        big = 10**40
        text = write_records([record([0], (big,))])
        assert read_records(text)[0][1] == (big,)

    def test_histogram(self):
        hist = cumulative_histogram(
            [awgnc_pseudoweight(v) for v in [(1, 1, 0), (0, 0, 0), (1, 1, 1)]], [1.0, 2.5, 3.0]
        )
        assert write_histogram(hist) == (
            "# zero_count=1\n# total=2\n"
            '"edge","cumulative_count"\n"1","0"\n"2.5","1"\n"3","2"\n'
        )
        assert write_gnuplot(hist) == "# zero_count=1\n# edge cumulative_count\n1 0\n2.5 1\n3 2\n"

    def test_cone_report(self, h422):
        report = in_fundamental_cone(h422, [3, 1, 1, 0])
        text = write_cone_report(report)
        assert text.splitlines()[:3] == [
            "# member=false",
            '"status","kind","check","bit"',
            '"violated","parity","0","0"',
        ]
        rendered = render_cone_report([3, 1, 1, 0], report)
        assert "NOT in the fundamental cone" in rendered
        assert "parity(j=0,i=0)" in rendered

    def test_render_member(self, h422):
        report = in_fundamental_cone(h422, [2, 1, 1, 0])
        rendered = render_cone_report([2, 1, 1, 0], report, minimal=True, kind=PcwClass.MINIMAL)
        assert "minimal: yes" in rendered and "class: minimal" in rendered

    def test_gaussian(self, h422):
        report = verify_gaussian_limit(h422, ColumnSubset.of([0, 1, 3]), schedule=[1e-1, 1e-2])
        lines = write_gaussian(report).splitlines()
        assert lines[0] == "# converged=false"
        assert lines[1] == '"i","epsilon","product","target","relative_error"'
        # 4 bits x 2 epsilons
        assert len(lines) == 2 + 8
        assert lines[2].startswith('"0","0.1","')

    def test_weight_format_is_exact_enough(self):
        assert f"{float(Fraction(32, 5)):.12f}" == "6.400000000000"
