import io
import json
import subprocess
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from ellhall.cli import (ConfigError, RunConfig, cmd_characters,
                         cmd_curve_info, cmd_straighten, load_curve_file,
                         main)

SRC = str(Path(__file__).resolve().parent.parent / "src")


@pytest.fixture()
def e1_file(tmp_path):
    path = tmp_path / "e1.curve"
    path.write_text("# supersingular test curve\nq=2\na3=1\n")
    return str(path)


@pytest.fixture()
def e2_file(tmp_path):
    path = tmp_path / "e2.curve"
    path.write_text("q=5\na4=1\na6=1\n")
    return str(path)


class TestConfig:
    def test_load_curve_file(self, e1_file):
        assert load_curve_file(e1_file) == {"q": 2, "a3": 1}

    def test_unknown_key(self, tmp_path):
        p = tmp_path / "bad.curve"
        p.write_text("q=2\nfoo=1\n")
        with pytest.raises(ConfigError):
            load_curve_file(str(p))

    def test_non_integer(self, tmp_path):
        p = tmp_path / "bad.curve"
        p.write_text("q=two\n")
        with pytest.raises(ConfigError):
            load_curve_file(str(p))

    def test_missing_q(self, tmp_path):
        p = tmp_path / "bad.curve"
        p.write_text("a3=1\n")
        with pytest.raises(ConfigError):
            load_curve_file(str(p))

    def test_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(n=0).validate()
        with pytest.raises(ConfigError):
            RunConfig(out_format="xml").validate()


class TestCurveInfo:
    def test_e1_report(self):
        report = cmd_curve_info(RunConfig())
        assert report["schema_version"] == 1
        by_name = {c["name"]: c for c in report["checks"]}
        assert by_name["counts-match-trace-recursion"]["status"] == "pass"
        assert by_name["counts-match-trace-recursion"]["detail"]["trace"] == "0"
        assert "[3, 9, 9, 9, 33, 81]" in str(by_name["counts-match-trace-recursion"]["detail"])

    def test_singular_is_config_error(self):
        config = RunConfig(curve_params={"q": 2})
        rc = main(["curve-info"])
        assert rc == 0
        with pytest.raises(ConfigError):
            cmd_curve_info(config)


class TestCharacters:
    def test_level_two(self):
        report = cmd_characters(RunConfig(n=2))
        detail = report["checks"][0]["detail"]
        assert detail["primitive orbits"] == "3"
        assert detail["frobenius-fixed"] == "3"
        assert report["checks"][0]["status"] == "pass"

    def test_level_one_all_primitive(self):
        report = cmd_characters(RunConfig(n=1))
        detail = report["checks"][0]["detail"]
        assert detail["primitive orbits"] == detail["orbits"]


class TestStraighten:
    def test_basic_product(self):
        report = cmd_straighten(RunConfig(n=1), "t(1,0) * t(0,1)")
        nf = report["normal_form"]
        assert len(nf) == 2
        assert nf[json.dumps([[0, 1], [1, 0]])] == "1"

    def test_commuting_ray(self):
        report = cmd_straighten(RunConfig(n=1), "t(0,1) * t(0,2)")
        nf = report["normal_form"]
        assert list(nf) == [json.dumps([[0, 2], [0, 1]])]

    def test_theta_and_scalars(self):
        report = cmd_straighten(RunConfig(n=1), "2 * theta(0,2) - t(0,2) + (1/3)*t(0,1)*t(0,1)")
        assert report["checks"][0]["status"] == "pass"


class TestMainEntry:
    def run_main(self, argv):
        buf = io.StringIO()
        with redirect_stdout(buf):
            rc = main(argv)
        return rc, buf.getvalue()

    def test_curve_info_exit_zero(self, e1_file):
        rc, out = self.run_main(["--curve", e1_file, "curve-info"])
        assert rc == 0
        assert "counts-match-trace-recursion" in out

    def test_singular_exit_two(self, tmp_path):
        p = tmp_path / "sing.curve"
        p.write_text("q=2\n")
        rc, _ = self.run_main(["--curve", str(p), "curve-info"])
        assert rc == 2

    def test_missing_file_exit_two(self):
        rc, _ = self.run_main(["--curve", "/nonexistent.curve", "curve-info"])
        assert rc == 2

    def test_parse_error_exit_two(self):
        rc, _ = self.run_main(["straighten", "t(1,0) * oops("])
        assert rc == 2

    def test_json_deterministic(self, e1_file):
        rc1, out1 = self.run_main(["--curve", e1_file, "--format", "json", "characters"])
        rc2, out2 = self.run_main(["--curve", e1_file, "--format", "json", "characters"])
        assert rc1 == rc2 == 0
        assert out1 == out2
        parsed = json.loads(out1)
        assert parsed["schema_version"] == 1

    def test_csv_format(self, e1_file):
        rc, out = self.run_main(["--curve", e1_file, "--format", "csv", "curve-info"])
        assert rc == 0
        assert out.splitlines()[0] == "name,status,detail"

    def test_verify_all_reduced_budget_skips(self, e1_file):
        rc, out = self.run_main(["--curve", e1_file, "--budget-degree", "1",
                                 "--format", "json", "verify-all"])
        assert rc == 0
        report = json.loads(out)
        assert report["summary"]["fail"] == 0
        assert report["summary"]["skip"] == len(report["checks"])

    def test_verify_all_mutation_fails(self, e1_file):
        rc, out = self.run_main(["--curve", e1_file, "--budget-degree", "1",
                                 "--inject-sign-flip", "--format", "json",
                                 "verify-all"])
        assert rc == 1
        report = json.loads(out)
        assert report["summary"]["fail"] >= 1
        failed = {c["name"] for c in report["checks"] if c["status"] == "fail"}
        assert "straightening-soundness" in failed


def test_console_entry_point(e1_file):
    proc = subprocess.run(
        [sys.executable, "-m", "ellhall", "--curve", e1_file, "curve-info"],
        capture_output=True, text=True,
        env={"PYTHONPATH": SRC, "PATH": "/usr/bin:/bin"})
    assert proc.returncode == 0
    assert "summary:" in proc.stdout
