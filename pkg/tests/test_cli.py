import json

import pytest

from toric3 import cli


def run_json(capsys, argv):
    rc = cli.run(argv)
    out = capsys.readouterr().out
    return rc, json.loads(out)


class TestInfo:
    def test_k1(self, capsys):
        rc, out = run_json(capsys, ["info", "@K1"])
        assert rc == 0
        assert out["schema"] == "toric3/1"
        assert out["points"] == 5
        assert out["vol3"] == 4
        assert out["L"] == 1
        assert out["width"] == 2

    def test_flat_t0(self, capsys):
        rc, out = run_json(capsys, ["info", "@T0"])
        assert rc == 0
        assert out["vol3"] == 0 and out["dim"] == 2

    def test_unknown_catalog_name(self, capsys):
        assert cli.run(["info", "@nonsense"]) == 2

    def test_bad_tab_parameters(self, capsys):
        assert cli.run(["info", "@Tab:2,2"]) == 2


class TestPolytopeFiles:
    def test_json_file(self, tmp_path, capsys):
        f = tmp_path / "seg.json"
        f.write_text(json.dumps(
            {"vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
        rc, out = run_json(capsys, ["info", str(f)])
        assert rc == 0
        assert out["vol3"] == 1

    def test_missing_file(self, capsys):
        assert cli.run(["info", "/does/not/exist.json"]) == 2


class TestLengthAndSearches:
    def test_length_certificate(self, capsys):
        rc, out = run_json(capsys, ["length", "@S2"])
        assert rc == 0
        assert out["L"] == 1
        assert len(out["certificate"]["directions"]) == 1

    def test_segments_t0(self, capsys):
        rc, out = run_json(capsys, ["segments", "@T0", "--target-L", "2"])
        assert rc == 0
        assert out["count"] == 16

    def test_triangles_t2_empty(self, capsys):
        rc, out = run_json(capsys, ["triangles", "@T2"])
        assert rc == 0 and out["count"] == 0

    def test_tetra_e(self, capsys):
        rc, out = run_json(capsys, ["tetra", "@E"])
        assert rc == 0 and out["count"] == 1

    def test_pair(self, capsys):
        rc, out = run_json(capsys, ["pair", "@K1", "@K1"])
        assert rc == 0
        assert out["label"] == "(K1,K1)" and out["length"] == 2

    def test_triple(self, capsys):
        rc, out = run_json(capsys, ["triple", "@S1", "@S2", "@S2"])
        assert rc == 0 and out["label"] == "(ii)"

    def test_pair_precondition(self, capsys):
        # EX72 has length 2, not a valid L = 1 summand
        assert cli.run(["pair", "@EX72", "@K1"]) == 2


class TestZeros:
    def test_curve_count(self, tmp_path, capsys):
        f = tmp_path / "f.txt"
        f.write_text("1 2 1 0\n-2 1 2 0\n1 0 0 0\n")
        rc, out = run_json(capsys, ["zeros", str(f), "--q", "7"])
        assert rc == 0 and out["N_f"] == 54

    def test_extension_field_coefficient(self, tmp_path, capsys):
        f = tmp_path / "g.txt"
        f.write_text("g^1 1 0\n1 0 0\n")  # g*u + 1 over GF(9)
        rc, out = run_json(capsys, ["zeros", str(f), "--q", "9"])
        assert rc == 0 and out["N_f"] == 8  # one u per v

    def test_zero_polynomial_rejected(self, tmp_path):
        f = tmp_path / "z.txt"
        f.write_text("5 1 0 0\n")  # 5 = 0 in F_5
        assert cli.run(["zeros", str(f), "--q", "5"]) == 2


class TestCode:
    def test_csv_report(self, capsys):
        rc = cli.run(["code", "@P8", "--q", "5", "--report", "csv"])
        out = capsys.readouterr().out.strip().splitlines()
        assert rc == 0
        assert out[0] == "n,k,d,N_P,griesmer,gv"
        assert out[1] == "64,8,36,28,47,37"

    def test_json_report(self, capsys):
        rc, out = run_json(capsys, ["code", "@P8", "--q", "5"])
        assert rc == 0
        assert (out["n"], out["k"], out["d"]) == (64, 8, 36)
        assert any(b["name"] == "griesmer" for b in out["bounds"])

    def test_budget_exit_code(self, tmp_path):
        f = tmp_path / "big.json"
        big = [[0, 0, 0], [3, 0, 0], [0, 3, 0], [0, 0, 3]]
        f.write_text(json.dumps({"vertices": big}))
        rc = cli.run(["code", str(f), "--q", "7", "--engine", "exhaustive"])
        assert rc == 3


class TestBounds:
    def test_formula(self, capsys):
        rc, out = run_json(capsys, ["bounds", "--formula", "special_bound",
                                    "--args", "cls=T0", "q=7"])
        assert rc == 0 and out["value"] == 60

    def test_formula_width_one_final(self, capsys):
        rc, out = run_json(capsys, ["bounds", "--formula",
                                    "width_one_final_bound",
                                    "--args", "L=2", "q=11"])
        assert rc == 0 and out["value"] == 250

    def test_polytope_reports(self, capsys):
        rc, out = run_json(capsys, ["bounds", "@EX72", "--q", "5"])
        assert rc == 0
        names = [b["name"] for b in out["bounds"]]
        assert "width_one_final" in names

    def test_unknown_formula(self):
        assert cli.run(["bounds", "--formula", "no_such"]) == 2

    def test_missing_arguments(self):
        assert cli.run(["bounds"]) == 2


class TestVerify:
    def test_table1_passes(self, capsys):
        rc, out = run_json(capsys, ["verify", "table1"])
        assert rc == 0
        assert out["failed"] == 0 and out["passed"] == 12

    def test_deterministic_output(self, capsys):
        cli.run(["verify", "lemma41"])
        first = capsys.readouterr().out
        cli.run(["verify", "lemma41"])
        second = capsys.readouterr().out
        assert first == second

    def test_unknown_suite(self):
        assert cli.run(["verify", "bogus"]) == 2

    def test_classify_suites(self, capsys):
        for suite in ("classify2", "classify3"):
            rc, out = run_json(capsys, ["verify", suite])
            assert rc == 0 and out["failed"] == 0

    def test_ex63(self, capsys):
        rc, out = run_json(capsys, ["verify", "ex63"])
        assert rc == 0 and out["failed"] == 0


class TestUsage:
    def test_no_command(self, capsys):
        assert cli.run([]) == 2

    def test_unknown_command(self, capsys):
        assert cli.run(["frobnicate"]) == 2

    def test_threads_flag_accepted(self, capsys):
        rc, out = run_json(capsys, ["--threads", "1", "info", "@S1"])
        assert rc == 0 and out["points"] == 4
