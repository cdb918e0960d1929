import json
import subprocess
import sys

import jsonschema
import pytest

from qeuclid.checks import Config, ConfigError, parse_config, run_suite
from qeuclid.cli import REPORT_SCHEMA, build_report, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestEval:
    def test_star(self, capsys):
        assert run(capsys, "eval", "star", "x-", "x+")[:2] == (0, "x+*x- + (q - q^-1)*x3^2\n")

    def test_translate(self, capsys):
        assert run(capsys, "eval", "translate", "x3")[1] == "x3 + y.x3\n"

    def test_invert_and_derivative(self, capsys):
        assert run(capsys, "eval", "invert", "x+")[1] == "-x+\n"
        assert run(capsys, "eval", "dleft", "3", "x3^2")[1] == "(q^2 + 1)*x3\n"

    def test_exp(self, capsys):
        code, out, _ = run(capsys, "eval", "exp", "--cap", "1", "--which", "xp")
        assert code == 0
        assert out.strip() == "-i*q*x+*p.x- + i*x3*p.x3 - i*q^-1*x-*p.x+ + 1"

    def test_numeric_evaluation(self, capsys):
        code, out, _ = run(capsys, "eval", "star", "x-", "x+", "--at", "2")
        assert code == 0 and "(0, 2, 0): 3/2" in out

    def test_parse_error_is_a_usage_error(self, capsys):
        code, _, err = run(capsys, "eval", "star", "x-", "x+ +")
        assert code == 2 and "position 4" in err

    def test_wrong_operand_count(self, capsys):
        assert run(capsys, "eval", "star", "x-")[0] == 2
        assert run(capsys, "eval", "dleft", "7", "x3")[0] == 2


class TestVerify:
    def test_unknown_suite(self, capsys):
        code, _, err = run(capsys, "verify", "nosuch")
        assert code == 2 and "invalid choice" in err

    def test_malformed_config(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("deg 6\n")
        assert run(capsys, "verify", "star", "--config", str(cfg))[0] == 2
        assert run(capsys, "verify", "star", "--config", str(tmp_path / "missing.cfg"))[0] == 2

    def test_report_is_valid_and_deterministic(self, tmp_path, capsys):
        cfg = tmp_path / "small.cfg"
        cfg.write_text("# quick run\ndeg = 3\nassoc_samples = 5\nconj_samples = 5\n")
        code, out, _ = run(capsys, "verify", "star", "--config", str(cfg), "--no-timing")
        assert code == 0
        doc = json.loads(out)
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["checks"][0]["paper-anchor"] == "Eq. star-product formula"
        assert all(c["residual"] == "0" for c in doc["checks"])
        _, again, _ = run(capsys, "verify", "star", "--config", str(cfg), "--no-timing")
        assert again == out

    def test_deg_flag_reaches_the_oracle(self, capsys):
        code, out, _ = run(capsys, "verify", "star", "--deg", "2", "--quiet")
        assert code == 0 and out == ""

    def test_report_roundtrip(self, tmp_path, capsys):
        path = tmp_path / "rep.json"
        run(capsys, "verify", "algebra", "--out", str(path), "--quiet")
        code, out, _ = run(capsys, "report", str(path), "--format", "text")
        assert code == 0 and "summary: pass" in out
        assert run(capsys, "report", str(tmp_path / "nope.json"))[0] == 2

    def test_console_script_entry(self):
        proc = subprocess.run([sys.executable, "-m", "qeuclid.cli", "eval", "translate", "x3"],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and proc.stdout == "x3 + y.x3\n"


class TestReport:
    def test_empty_run_is_schema_valid(self):
        doc = build_report([], [])
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["checks"] == [] and doc["summary"]["status"] == "pass"

    def test_failing_check_carries_residual(self, monkeypatch):
        from qeuclid import checks

        def broken(cfg):
            return False, "x3", "forced"

        monkeypatch.setattr(checks.SUITES["star"][3], "body", broken)
        results = run_suite("star", Config(), only=["coordinate-relations"])
        doc = build_report(["star"], results)
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert doc["summary"] == {"status": "fail", "mandatory-failures": 1, "findings": 0}
        assert doc["checks"][0]["residual"] == "x3"

    def test_crashing_check_is_a_failure(self, monkeypatch):
        from qeuclid import checks

        def crash(cfg):
            raise RuntimeError("boom")

        monkeypatch.setattr(checks.SUITES["algebra"][0], "body", crash)
        (r,) = run_suite("algebra", Config(), only=["uqsu2-relations"])
        assert r.status == "fail" and "boom" in r.detail


class TestConfig:
    def test_parse(self):
        cfg = parse_config("q0 = 6/5\ncaps = 3, 4\nsuites = star, lattice\nJ=8")
        assert cfg.q0 == pytest.approx(1.2) and cfg.caps == (3, 4) and cfg.suites == ("star", "lattice")
        assert cfg.J == 8

    @pytest.mark.parametrize("text", ["deg", "nosuch = 1", "deg = six"])
    def test_errors(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)
