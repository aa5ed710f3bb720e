import json
import math

import pytest
from click.testing import CliRunner

from conftest import CORPUS
from goldens import AP_COLD, LISTING_G2, COLUMNS, MP_FLU
from profilegen.cli import cli


def run(*args):
    return CliRunner().invoke(cli, [str(a) for a in args])


def c(name):
    return CORPUS / name


def fields(output):
    out = {}
    for line in output.splitlines():
        key, _, value = line.partition(": ")
        out.setdefault(key.strip(), value)
    return out


class TestValidate:
    def test_corpus_dir(self):
        r = run("validate", CORPUS)
        assert r.exit_code == 0
        assert r.stdout.count(": ok (") == len(list(CORPUS.glob("*.gen"))) * 2

    def test_invalid(self, tmp_path):
        f = tmp_path / "bad.gen"
        f.write_text("X = [\n  [{a}, {b}, 3],\n]\n")
        r = run("validate", f)
        assert r.exit_code == 1
        assert "k <= m" in r.stdout and ":2:3:" in r.stdout

    def test_missing(self, tmp_path):
        assert run("validate", tmp_path / "nope.gen").exit_code == 2

    def test_warning_only(self, tmp_path):
        f = tmp_path / "warn.gen"
        f.write_text("W = [[{a,b}, 0]]\n")
        r = run("validate", f)
        assert r.exit_code == 0 and "Degenerate" in r.stdout


class TestCount:
    @pytest.mark.parametrize("name, n", [("pdd", 63567), ("gad", 27090), ("ssd", 7)])
    def test_counts(self, name, n):
        r = run("count", c(f"{name}.gen"))
        assert r.exit_code == 0
        assert fields(r.stdout)["profiles"] == str(n)
        assert fields(r.stdout)["scientific"] == f"{n:.3e}"

    def test_overlapping(self, tmp_path):
        f = tmp_path / "o.gen"
        f.write_text("O = [[{a,b}, 1], [{b,c}, 1]]\n")
        r = run("count", f)
        assert r.exit_code == 1 and "OverlappingCriteria" in r.output

    def test_missing(self):
        assert run("count", "missing.gen").exit_code == 2


class TestExport:
    def test_cold_matrix(self, tmp_path):
        out = tmp_path / "cold.csv"
        r = run("export", c("cold.gen"), "--columns-from", c("flu.gen"), "--out", out)
        assert r.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0].split(",") == COLUMNS
        assert [[int(x) for x in row.split(",")] for row in lines[1:]] == AP_COLD

    def test_flu_mp(self):
        r = run("export", c("flu.gen"), "--mp")
        assert r.stdout.splitlines()[1] == ",".join(map(str, MP_FLU))

    def test_pdd_rows(self, tmp_path):
        out = tmp_path / "pdd.csv"
        assert run("export", c("pdd.gen"), "--out", out).exit_code == 0
        assert len(out.read_text().splitlines()) == 63567 + 1

    def test_row_cap(self):
        r = run("export", c("pdd.gen"), "--row-cap", 10)
        assert r.exit_code == 1 and "CapExceeded" in r.output

    def test_bad_dir(self, tmp_path):
        r = run("export", c("flu.gen"), "--out", tmp_path / "no" / "x.csv")
        assert r.exit_code == 2


class TestMpcs:
    def test_pdd_gad_auto(self):
        r = run("mpcs", c("pdd.gen"), c("gad.gen"), "--format", "json")
        rep = json.loads(r.stdout)
        assert rep["mode"] == "conditional"
        assert rep["value_3dp"] == "0.519"
        assert rep["value"] == 11 / math.sqrt(450)
        assert rep["comparisons_before"] == 1_722_030_030 and rep["comparisons_after"] == 1

    def test_toy_brute(self):
        r = run("mpcs", c("toy_a.gen"), c("toy_b.gen"), "--mode", "brute", "--oracle")
        f = fields(r.stdout)
        assert r.exit_code == 0
        assert f["value"] == repr(2 / 3) and f["comparisons"] == "256"
        assert f["agrees"] == "True"

    def test_self(self):
        r = run("mpcs", c("flu.gen"), c("flu.gen"))
        assert fields(r.stdout)["value_3dp"] == "1.000"

    def test_mean(self):
        r = run("mpcs", c("flu.gen"), c("cold.gen"), "--agg", "mean", "--oracle", "--format", "json")
        rep = json.loads(r.stdout)
        assert rep["mode"] == "brute" and rep["oracle"]["agrees"]
        assert rep["witness_A"] is None

    def test_conditional_mean_is_usage_error(self):
        r = run("mpcs", c("toy_a.gen"), c("toy_b.gen"), "--mode", "conditional", "--agg", "mean")
        assert r.exit_code == 2

    def test_published_count(self, tmp_path):
        r = run(
            "mpcs", c("toy_a.gen"), c("toy_b.gen"), "--mode", "conditional",
            "--published-count", "toy_A=1,376,583,579", "--format", "json",
        )
        assert json.loads(r.stdout)["comparisons_before"] == 1_376_583_579 * 16
        assert run("mpcs", c("toy_a.gen"), c("toy_b.gen"), "--published-count", "x").exit_code == 2

    def test_text_and_json_agree(self):
        args = ["mpcs", c("pdd.gen"), c("ssd.gen")]
        text = fields(run(*args).stdout)
        rep = json.loads(run(*args, "--format", "json").stdout)
        assert text["value"] == repr(rep["value"])
        assert text["comparisons_before"] == str(rep["comparisons_before"])
        assert text["witness_A"] == ", ".join(rep["witness_A"])

    def test_brute_cap(self):
        r = run("mpcs", c("pdd.gen"), c("gad.gen"), "--mode", "brute", "--row-cap", 100)
        assert r.exit_code == 1

    def test_out_file(self, tmp_path):
        out = tmp_path / "r.json"
        run("mpcs", c("toy_a.gen"), c("toy_b.gen"), "--format", "json", "--out", out)
        assert json.loads(out.read_text())["value"] == 2 / 3


class TestReduce:
    def test_toy(self):
        r = run("reduce", c("toy_a.gen"), c("toy_b.gen"))
        f = fields(r.stdout)
        assert f["A**"] == "[[{a, d, e}]]" and f["B**"] == "[[{d, e, f}]]"
        assert f["shared"] == "d, e" and f["untouched"] == "-"

    def test_flu_cold(self):
        rep = json.loads(run("reduce", c("flu.gen"), c("cold.gen"), "--format", "json").stdout)
        assert len(rep["witness_A"]) == 7 and len(rep["witness_B"]) == 5

    def test_identical(self):
        f = fields(run("reduce", c("gad.gen"), c("gad.gen")).stdout)
        assert f["A**"] == f["B**"] and f["comparisons_after"] == "1"

    def test_verify(self):
        f = fields(run("reduce", c("flu.gen"), c("cold.gen"), "--verify").stdout)
        assert f["verified"] == "True"

    def test_overlap_error(self, tmp_path):
        f = tmp_path / "o.gen"
        f.write_text("O = [[{a,b}, 1], [{b,c}, 1]]\n")
        assert run("reduce", f, f).exit_code == 1


class TestEval:
    def test_g2_golden(self):
        r = run("eval", "[{a,b}, {c,d}, {e,f}, 2]")
        lines = r.stdout.splitlines()
        assert lines[0] == "G2: 54 combinations"
        got = {frozenset(x.strip("{}").split(", ")) for x in lines[1:]}
        assert got == set(LISTING_G2)

    def test_count_only(self):
        r = run("eval", "[[{a,b}, {c}], [{d}, {e,f}], (1,0,3)]", "--count-only")
        assert r.stdout == "G4: 33 combinations\n"

    def test_stdin(self):
        r = CliRunner().invoke(cli, ["eval", "-"], input="[{a,b,c}, 2]\n")
        assert r.stdout.splitlines()[1:] == ["{a, b}", "{a, c}", "{b, c}", "{a, b, c}"]

    def test_invalid(self):
        r = run("eval", "[{a}, {b}, 3]")
        assert r.exit_code == 1 and "k <= m" in r.output

    def test_ambiguous(self):
        assert run("eval", "[{a}, (1,2,3)]").exit_code == 1
