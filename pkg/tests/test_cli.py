import io
import subprocess
import sys

import pytest

from rfcert.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run
from rfcert.groupfile import bundled_path

SANOV = str(bundled_path("sanov.grp"))
POLY = str(bundled_path("poly.grp"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line)


class TestSeparate:
    def test_record(self):
        code, out, _ = call("separate", SANOV, "A")
        assert code == EXIT_OK
        assert out.startswith("rfcert-certificate: 1\n")
        rec = fields(out)
        assert rec["p"] == "3" and rec["order_bound"] == "81"

    def test_deterministic(self):
        first = call("separate", SANOV, "A B^-1 A^2")[1]
        assert first == call("separate", SANOV, "A B^-1 A^2")[1]

    def test_human(self):
        code, out, _ = call("separate", SANOV, "[A,B]", "--format", "human")
        assert code == EXIT_OK and "order" in out.lower()

    def test_semisimple(self):
        code, out, _ = call("separate", SANOV, "A", "--mode", "semisimple", "--level", "1")
        assert code == EXIT_OK and fields(out)["witness_level"] == "1"

    def test_certificate_roundtrip(self, tmp_path):
        cert = tmp_path / "c.txt"
        cert.write_text(call("separate", POLY, "A B")[1])
        code, out, _ = call("check", POLY, "--certificate", str(cert))
        assert code == EXIT_OK and out == "certificate: ok\n"
        code, out, _ = call("check", SANOV, "--certificate", str(cert))
        assert code == EXIT_DOMAIN and "FAILED" in out

    def test_identity_word(self):
        code, _, err = call("separate", SANOV, "A A^-1")
        assert code == EXIT_DOMAIN and err.startswith("error:")


class TestErrors:
    def test_missing_file(self):
        assert call("separate", "/nonexistent.grp", "A")[0] == EXIT_DOMAIN

    def test_unknown_generator(self):
        assert call("separate", SANOV, "Z")[0] == EXIT_DOMAIN

    def test_usage(self):
        assert call("separate", SANOV)[0] == EXIT_USAGE
        assert call()[0] == EXIT_USAGE
        assert call("depth", "x", "--budget", "0")[0] == EXIT_USAGE
        assert call("frobnicate")[0] == EXIT_USAGE

    def test_bad_group_file(self, tmp_path):
        p = tmp_path / "bad.grp"
        p.write_text("ring char=0 vars=1\n")
        code, _, err = call("separate", str(p), "A")
        assert code == EXIT_DOMAIN and err


class TestDepthAndCurve:
    def test_depth_examples(self):
        assert fields(call("depth", "x")[1])["order"] == "2"
        rec = fields(call("depth", "[x,y]")[1])
        assert rec["order"] == "6" and rec["exhaustive"] == "true"
        rec = fields(call("depth", "[x,y]", "--class", "product-of-simple-lie-type")[1])
        assert rec["order"] == "60"

    def test_depth_with_aut_file(self, tmp_path):
        aut = tmp_path / "swap.aut"
        aut.write_text("swap: x -> y, y -> x\n")
        rec = fields(call("depth", "x", "--aut", str(aut), "--require-invariant")[1])
        assert rec["invariance"] == "true" and rec["order"] == "2"  # x, y -> the generator of C2

    def test_bad_aut_file(self, tmp_path):
        aut = tmp_path / "t.aut"
        aut.write_text("t: x -> x y\n")
        assert call("depth", "x", "--aut", str(aut))[0] == EXIT_DOMAIN

    def test_oracle_curve(self):
        code, out, _ = call("curve", "--oracle", "--n", "3", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[:3] == ["n,value", "1,2", "2,3"]

    def test_pipeline_curve_fit(self):
        code, out, _ = call("curve", "--pipeline", SANOV, "--n", "3", "--format", "csv", "--fit")
        assert code == EXIT_OK and out.splitlines()[-1].startswith("# fit:")

    def test_curve_needs_source(self):
        assert call("curve", "--n", "3")[0] == EXIT_USAGE

    def test_catalog_listing(self):
        code, out, _ = call("catalog", "--class", "simple-lie-type")
        assert code == EXIT_OK and "PSL2(7)" in out and "# complete through order 2447" in out


class TestOtherCommands:
    def test_witness(self):
        code, out, _ = call("witness", "x", "--level", "1")
        assert out.startswith("rfcert-witness: 1\n")
        assert fields(out)["length"] == "8"

    def test_lcm(self):
        code, out, _ = call("lcm", "x", "y")
        assert code == EXIT_OK and out.startswith("rfcert-lcm: 1\n")

    def test_lietype(self):
        code, out, _ = call("lietype", "info", "A1", "q=7")
        assert code == EXIT_OK and "168" in out
        assert call("lietype", "info", "A1", "q=6")[0] == EXIT_DOMAIN
        assert len(call("lietype", "tits")[1].strip().splitlines()) >= 8

    def test_check(self):
        code, out, _ = call("check", SANOV, "--words", "5")
        assert code == EXIT_OK and "failures: 0" in out


def test_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rfcert.cli", "depth", "x"], capture_output=True, text=True)
    assert proc.returncode == 0 and "order: 2" in proc.stdout
