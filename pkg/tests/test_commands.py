from __future__ import annotations

import pytest

from detperm_pcw.__main__ import PcwProgram
from detperm_pcw.algebra.gf2core import BinaryMatrix, code_parameters
from detperm_pcw.commands import read_matrix
from detperm_pcw.formats import parse_alist, parse_dense, read_records

from strategies import seeded_matrix


def run(*argv: str) -> int:
    return PcwProgram().run([str(a) for a in argv])


def vectors(path) -> list[tuple[int, ...]]:
    return [v for _, v in read_records(path.read_text())]


class TestCompute:
    def test_absdet(self, h422, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        assert run("compute", "--matrix", matrix_file(h422), "--kind", "absdet", "--all-subsets", "--out", out) == 0
        assert vectors(out) == [(0, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1), (0, 1, 1, 0)]

    def test_perm_from_alist(self, h422, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        assert run("compute", "--matrix", matrix_file(h422, "h.alist"), "--kind", "perm", "--out", out) == 0
        assert set(vectors(out)) >= {(2, 1, 1, 0), (0, 1, 1, 2)}

    def test_dumbbell_zero_row(self, dumbbell4, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        assert run("compute", "--matrix", matrix_file(dumbbell4), "--kind", "absdet", "--out", out) == 0
        rows = out.read_text().splitlines()
        assert len(rows) == 2
        assert rows[1].endswith('"0.000000000000","true"')

    def test_dedupe(self, h422, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        assert run("compute", "--matrix", matrix_file(h422), "--kind", "absdet", "--dedupe", "--out", out) == 0
        assert vectors(out) == [(0, 1, 1, 0), (1, 1, 0, 1), (1, 0, 1, 1)]

    def test_explicit_subsets_are_sorted(self, h422, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        code = run(
            "compute", "--matrix", matrix_file(h422), "--kind", "perm",
            "--subset", "1,2,3", "--subset", "0 1 2", "--out", out,
        )
        assert code == 0
        assert vectors(out) == [(2, 1, 1, 0), (0, 1, 1, 2)]

    def test_wrong_subset_size(self, h422, matrix_file):
        assert run("compute", "--matrix", matrix_file(h422), "--kind", "perm", "--subset", "0,1") == 1

    def test_all_subsets_flag_is_the_default(self, h422, matrix_file, tmp_path):
        flagged, plain = tmp_path / "flagged.csv", tmp_path / "plain.csv"
        assert run("compute", "--matrix", matrix_file(h422), "--all-subsets", "--out", flagged) == 0
        assert run("compute", "--matrix", matrix_file(h422), "--out", plain) == 0
        assert flagged.read_text() == plain.read_text()

    def test_all_subsets_excludes_subset(self, h422, matrix_file):
        assert run("compute", "--matrix", matrix_file(h422), "--all-subsets", "--subset", "0,1,2") == 1

    def test_all_subsets_help(self, capsys):
        with pytest.raises(SystemExit):
            run("compute", "--help")
        assert "already the default" in " ".join(capsys.readouterr().out.split())

    def test_det_rows_are_not_checked(self, h422, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        assert run("compute", "--matrix", matrix_file(h422), "--kind", "det", "--out", out) == 0
        assert vectors(out)[0] == (0, -1, 1, 0)
        assert '"false"' in out.read_text().splitlines()[1]

    def test_minimality_column(self, h422, matrix_file, tmp_path):
        out = tmp_path / "out.csv"
        assert run("compute", "--matrix", matrix_file(h422), "--kind", "perm", "--minimality", "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0].endswith('"is_minimal"')
        assert all(line.endswith('"true"') for line in lines[1:])

    def test_thread_count_does_not_change_output(self, matrix_file, tmp_path):
        config = tmp_path / "config.yaml"
        config.write_text("compute:\n    block_size: 4\n")
        H = seeded_matrix(2024, 4, 8)
        path = matrix_file(H)
        outputs = []
        for threads in (1, 8):
            out = tmp_path / f"out{threads}.csv"
            code = run("-c", config, "compute", "--matrix", path, "--kind", "perm", "--threads", threads, "--out", out)
            assert code == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]
        assert len(outputs[0].splitlines()) == 1 + 56


class TestHistogram:
    def test_from_vectors(self, h422, matrix_file, tmp_path):
        records = tmp_path / "records.csv"
        hist = tmp_path / "hist.csv"
        plot = tmp_path / "hist.dat"
        assert run("compute", "--matrix", matrix_file(h422), "--kind", "absdet", "--out", records) == 0
        code = run("histogram", "--vectors", records, "--edges", "1:4:1", "--out", hist, "--gnuplot", plot)
        assert code == 0
        assert hist.read_text().splitlines() == [
            "# zero_count=0",
            "# total=4",
            '"edge","cumulative_count"',
            '"1","0"',
            '"2","2"',
            '"3","4"',
            '"4","4"',
        ]
        assert plot.read_text().splitlines()[2:] == ["1 0", "2 2", "3 4", "4 4"]

    def test_from_matrix(self, dumbbell4, matrix_file, tmp_path):
        hist = tmp_path / "hist.csv"
        assert run("histogram", "--matrix", matrix_file(dumbbell4), "--kind", "absdet", "--out", hist) == 0
        assert hist.read_text().startswith("# zero_count=1\n")

    def test_bad_edges(self, h422, matrix_file):
        assert run("histogram", "--matrix", matrix_file(h422), "--kind", "absdet", "--edges", "3,2") == 1


class TestCheck:
    def test_violation(self, h422, matrix_file, tmp_path, capsys):
        out = tmp_path / "cone.csv"
        assert run("check", "--matrix", matrix_file(h422), "--vector", "3,1,1,0", "--out", out) == 0
        assert "NOT in the fundamental cone" in capsys.readouterr().out
        assert '"violated","parity","0","0"' in out.read_text()

    def test_minimal(self, h422, matrix_file, capsys):
        assert run("check", "--matrix", matrix_file(h422), "--vector", "2,1,1,0") == 0
        text = capsys.readouterr().out
        assert "minimal: yes" in text
        assert "class: minimal" in text

    def test_zero(self, h422, matrix_file, capsys):
        assert run("check", "--matrix", matrix_file(h422), "--vector", "0,0,0,0") == 0
        text = capsys.readouterr().out
        assert "member of the fundamental cone" in text and "zero vector" in text

    def test_length_mismatch(self, h422, matrix_file):
        assert run("check", "--matrix", matrix_file(h422), "--vector", "1,1") == 2


class TestGaussian:
    def test_default_schedule(self, dumbbell3, matrix_file, tmp_path):
        out = tmp_path / "g.csv"
        assert run("gaussian", "--matrix", matrix_file(dumbbell3), "--subset", "0,1,2,3,4,5,6", "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# converged=true"
        assert len(lines) == 2 + 7 * 4

    def test_malformed_schedule(self, h422, matrix_file):
        assert run("gaussian", "--matrix", matrix_file(h422), "--subset", "0,1,3", "--eps", "0.01,0.1") == 1

    def test_not_converged(self, h422, matrix_file, tmp_path):
        out = tmp_path / "g.csv"
        assert run("gaussian", "--matrix", matrix_file(h422), "--subset", "0,1,3", "--eps", "0.1", "--out", out) == 2
        assert out.exists()


class TestGenerate:
    def test_dumbbell(self, tmp_path):
        assert run("generate", "dumbbell", "--k", "3", "--out", tmp_path / "db") == 0
        H = parse_alist((tmp_path / "db.alist").read_text())
        assert H == parse_dense((tmp_path / "db.txt").read_text())
        assert code_parameters(H) == (7, 2, 3)

    def test_regular_is_reproducible(self, tmp_path):
        for name in ("a", "b"):
            code = run("generate", "regular", "--n", 20, "--dv", 3, "--dc", 4, "--seed", 9, "--out", tmp_path / name)
            assert code == 0
        assert (tmp_path / "a.alist").read_text() == (tmp_path / "b.alist").read_text()
        assert read_matrix(tmp_path / "a.txt").shape == (15, 20)

    def test_regular_needs_degrees(self):
        assert run("generate", "regular", "--n", 20) == 1

    def test_decycle_budget(self, h422, matrix_file, tmp_path):
        config = tmp_path / "config.yaml"
        config.write_text("generate:\n    swap_budget: 20\n")
        out = tmp_path / "best"
        assert run("-c", config, "generate", "decycle", "--matrix", matrix_file(h422), "--out", out) == 3
        assert read_matrix(tmp_path / "best.alist").shape == (2, 4)

    def test_tree(self, tmp_path):
        assert run("generate", "tree", "--n", 6, "--m", 3, "--out", tmp_path / "t") == 0
        H = read_matrix(tmp_path / "t.txt")
        assert int(H.bits.sum()) == 8


class TestErrors:
    def test_parse_error(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 0\n1 2\n")
        assert run("compute", "--matrix", path, "--kind", "absdet") == 1

    def test_missing_file(self, tmp_path):
        assert run("compute", "--matrix", tmp_path / "nope.txt", "--kind", "absdet") == 1

    def test_square_matrix(self, matrix_file):
        assert run("compute", "--matrix", matrix_file(BinaryMatrix([[1, 0], [0, 1]])), "--kind", "absdet") == 2

    def test_bad_kind(self, h422, matrix_file):
        with pytest.raises(SystemExit) as exc:
            run("compute", "--matrix", matrix_file(h422), "--kind", "nope")
        assert exc.value.code == 2
