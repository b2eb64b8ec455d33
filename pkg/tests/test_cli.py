import json

import pytest

from knotfold.bounds import theorem_len_bound, theorem_rop_bound
from knotfold.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBuild:
    def test_corpus_trefoil_full(self, tmp_path, capsys):
        out = tmp_path / "o"
        code, stdout, _ = run(capsys, "build", "--corpus", "trefoil", "--out", str(out))
        assert code == 0
        assert "3_1:" in stdout
        names = {p.name for p in out.iterdir()}
        assert names == {
            "3_1.step1.txt", "3_1.step1.json",
            "3_1.step2.txt", "3_1.step2.json",
            "3_1.step3.txt", "3_1.step3.json",
            "3_1.reports.txt",
        }

    def test_random_build_counts_and_seeds(self, tmp_path, capsys):
        out = tmp_path / "o"
        code, _, _ = run(
            capsys, "build", "--random", "g=7,seed=1,count=10", "--steps", "1-2",
            "--out", str(out),
        )
        assert code == 0
        lattice_files = [p for p in out.iterdir() if ".step" in p.name and p.suffix == ".txt"]
        assert len(lattice_files) == 20
        for seed in range(1, 11):
            assert (out / f"random_g7_s{seed}.step1.txt").exists()

    def test_malformed_input_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.grid"
        bad.write_text("X: 1,1\nO: 2,2\n")
        code, _, stderr = run(capsys, "build", "--input", str(bad))
        assert code == 2
        assert "NotAPermutation" in stderr

    def test_no_inputs_exit_2(self, tmp_path, capsys):
        code, _, stderr = run(capsys, "build", "--out", str(tmp_path / "o"))
        assert code == 2
        assert "no inputs" in stderr

    def test_deterministic_outputs(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run(capsys, "build", "--corpus", "4_1", "--out", str(a))
        run(capsys, "build", "--corpus", "4_1", "--out", str(b))
        for p in sorted(a.iterdir()):
            assert p.read_bytes() == (b / p.name).read_bytes()


class TestCertify:
    def test_full_corpus_passes(self, tmp_path, capsys):
        out = tmp_path / "o"
        code, stdout, _ = run(capsys, "certify", "--corpus", "all", "--out", str(out))
        assert code == 0
        assert "FAIL" not in stdout
        blob = json.loads((out / "3_1.cert.json").read_text())
        assert len(blob) == 3
        assert all(cert["passed"] for cert in blob)
        names = {c["name"] for cert in blob for c in cert["checks"]}
        assert "alexander_preserved" in names
        assert "alexander_matches_corpus" in names

    def test_corrupted_lattice_fails_exit_1(self, tmp_path, capsys):
        out = tmp_path / "o"
        run(capsys, "build", "--corpus", "trefoil", "--steps", "1", "--out", str(out))
        artifact = out / "3_1.step1.txt"
        lines = artifact.read_text().splitlines()
        # hand-edit one corner to force a self-intersection
        for i, line in enumerate(lines):
            if not line.startswith("#"):
                lines[i + 1] = lines[i]  # duplicate a corner position
                break
        artifact.write_text("\n".join(lines) + "\n")
        code, stdout, _ = run(capsys, "certify", "--lattice", str(artifact), "--out", str(out))
        assert code == 1
        assert "FAIL" in stdout

    def test_clean_lattice_passes(self, tmp_path, capsys):
        out = tmp_path / "o"
        run(capsys, "certify", "--corpus", "5_1", "--out", str(out))
        run(capsys, "build", "--corpus", "5_1", "--out", str(out))
        code, stdout, _ = run(
            capsys, "certify",
            "--lattice", str(out / "5_1.step2.txt"),
            "--lattice", str(out / "5_1.step3.txt"),
            "--out", str(out),
        )
        assert code == 0
        assert "FAIL" not in stdout


class TestExport:
    def test_trefoil_step2_metrics(self, tmp_path, capsys):
        out = tmp_path / "o"
        code, stdout, _ = run(
            capsys, "export", "--corpus", "trefoil", "--steps", "1-2", "--out", str(out)
        )
        assert code == 0
        line = next(l for l in stdout.splitlines() if "step 2" in l)
        fields = line.split()
        length = float(fields[fields.index("length") + 1])
        thickness = float(fields[fields.index("thickness") + 1])
        rope = float(fields[fields.index("ropelength") + 1])
        assert abs(thickness - 1.0) <= 1e-9
        assert rope <= 47.71
        assert abs(length - rope) < 1e-9
        assert (out / "3_1.step2.polyline.txt").exists()
        assert (out / "3_1.step2.arcs.txt").exists()

    def test_density_flag(self, tmp_path, capsys):
        out = tmp_path / "o"
        code, stdout, _ = run(
            capsys, "export", "--corpus", "trefoil", "--steps", "1",
            "--format", "polyline", "--density", "8", "--out", str(out),
        )
        assert code == 0
        coarse = (out / "3_1.step1.polyline.txt").read_text()
        code, stdout2, _ = run(
            capsys, "export", "--corpus", "trefoil", "--steps", "1",
            "--format", "polyline", "--density", "64", "--out", str(out),
        )
        fine = (out / "3_1.step1.polyline.txt").read_text()
        assert len(fine.splitlines()) > len(coarse.splitlines())
        # metrics line identical regardless of sampling density
        assert stdout.splitlines()[0] == stdout2.splitlines()[0]

    def test_unknown_format_usage_error(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["export", "--corpus", "trefoil", "--format", "stl"])
        assert exc.value.code == 2


class TestTable:
    def test_values_match_functions(self, capsys):
        code, stdout, _ = run(capsys, "table", "--table", "c=3..16")
        assert code == 0
        lines = stdout.strip().splitlines()
        header = lines[0].split("\t")
        assert header[0] == "c"
        assert len(lines) == 15
        for line in lines[1:]:
            cells = line.split("\t")
            c = int(cells[0])
            assert cells[1] == str(theorem_len_bound(c).value)
            assert cells[2] == str(theorem_len_bound(c, nonalternating_prime=True).value)
            assert abs(float(cells[3]) - float(theorem_rop_bound(c).value)) < 1e-6

    def test_certify_table_alias(self, capsys):
        code_a, out_a, _ = run(capsys, "certify", "--table", "c=3..16")
        code_b, out_b, _ = run(capsys, "table", "--table", "c=3..16")
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_single_value_range(self, capsys):
        code, stdout, _ = run(capsys, "table", "--table", "c=3")
        assert code == 0
        assert len(stdout.strip().splitlines()) == 2


def test_build_from_grid_file(tmp_path, capsys):
    grid = tmp_path / "my.grid"
    grid.write_text("# a trefoil\nX: 1,2,3,4,5\nO: 3,4,5,1,2\n")
    out = tmp_path / "o"
    code, stdout, _ = run(capsys, "build", "--input", str(grid), "--steps", "1", "--out", str(out))
    assert code == 0
    assert "my:" in stdout
    assert (out / "my.step1.txt").exists()


def test_unknown_corpus_name_exit_2(tmp_path, capsys):
    code, _, stderr = run(capsys, "build", "--corpus", "nope", "--out", str(tmp_path / "o"))
    assert code == 2
    assert "no corpus entry" in stderr
