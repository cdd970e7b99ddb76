import json
import subprocess
import sys

import pytest

from monogenic_radon.cli import ConfigError, Report, SuiteConfig, list_suites, main, run_suite, worker_count

KEYS = ["suite", "config", "checks", "passed", "failed", "elapsed_ms"]
CHECK_KEYS = ["name", "params", "lhs", "rhs", "pass"]


def test_registry():
    names = list_suites()
    assert len(names) == 9
    assert len(set(names)) == 9
    assert "dual-inversion" in names
    assert names[0] == "clifford-axioms" and names[-1] == "m2-degeneracy"


def test_sphere_suite_passes():
    rep = run_suite(SuiteConfig("sphere-lemmas", m=[3, 4], max_degree=3))
    assert rep.failed == 0
    assert rep.passed > 30


def test_json_schema_exact(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--suite", "clifford-axioms", "--m", "3", "--format", "json", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert list(data) == KEYS
    assert all(list(c) == CHECK_KEYS for c in data["checks"])
    assert isinstance(data["elapsed_ms"], int)
    assert data["passed"] == len(data["checks"]) and data["failed"] == 0
    assert all(isinstance(c["lhs"], str) and isinstance(c["pass"], bool) for c in data["checks"])


def test_report_round_trip():
    rep = run_suite(SuiteConfig("m2-degeneracy", m=[2], max_degree=2))
    back = Report.from_json(rep.to_json())
    assert back.to_dict() == rep.to_dict()


def test_report_rejects_inconsistent_counts():
    rep = run_suite(SuiteConfig("m2-degeneracy", m=[2], max_degree=1))
    data = rep.to_dict()
    data["passed"] += 1
    with pytest.raises(ValueError):
        Report.from_json(json.dumps(data))


def test_markdown(tmp_path):
    out = tmp_path / "r.md"
    assert main(["verify", "--suite", "m2-degeneracy", "--m", "2", "--max-degree", "1", "--format", "markdown", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("# m2-degeneracy")
    assert "| name | params | lhs | rhs | pass |" in text


def test_deterministic_checks():
    cfg = SuiteConfig("projections", m=[3], max_degree=2, frame="rotated:4")
    a, b = run_suite(cfg), run_suite(cfg)
    assert a.checks == b.checks


def test_worker_pool_matches_sequential():
    cfg = SuiteConfig("orthogonality", m=[3], max_degree=1)
    assert run_suite(cfg, workers=1).checks == run_suite(cfg, workers=2).checks


def test_worker_env(monkeypatch):
    monkeypatch.setenv("MONOGENIC_RADON_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("MONOGENIC_RADON_WORKERS", "0")
    with pytest.raises(ConfigError):
        worker_count()
    monkeypatch.delenv("MONOGENIC_RADON_WORKERS")
    assert worker_count() == 1


def test_unnormalized_lambda_fails_by_constant(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--suite", "kernel-reproduction", "--m", "3", "--max-degree", "1", "--use-printed-lambda", "--out", str(out)])
    assert code == 1
    data = json.loads(out.read_text())
    repro = [c for c in data["checks"] if c["name"] == "transform reproduces psi^j"]
    scaled = [c for c in data["checks"] if c["name"].startswith("unnormalized weight scales")]
    ratio = [c for c in data["checks"] if c["name"] == "unnormalized lambda / lambda"]
    assert repro and not any(c["pass"] for c in repro)
    assert scaled and all(c["pass"] for c in scaled)
    assert ratio and all(c["pass"] for c in ratio)
    # pi A_3 (3/2 - 1) = 2 pi^2
    assert ratio[0]["rhs"] == "4 * pi^(8/2)"


def test_empty_grid(tmp_path, capsys):
    assert main(["verify", "--suite", "m2-degeneracy", "--m", "2", "--max-degree", "0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["checks"] == [] and data["passed"] == 0 and data["failed"] == 0
    assert main(["verify", "--suite", "sphere-lemmas", "--m", ""]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "no-such-suite"],
        ["verify", "--suite", "projections", "--m", "2"],
        ["verify", "--suite", "sphere-lemmas", "--frame", "tilted"],
        ["verify", "--suite", "sphere-lemmas", "--out", "/nonexistent-dir/x.json"],
        ["verify", "--suite", "sphere-lemmas", "--format", "xml"],
        ["verify", "--suite", "sphere-lemmas", "--m", "three"],
        ["frobnicate"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_low_dimension_allowed_for_two_suites():
    assert run_suite(SuiteConfig("clifford-axioms", m=[2], max_degree=1)).failed == 0
    with pytest.raises(ConfigError):
        run_suite(SuiteConfig("stiefel-zonal", m=[2]))


def test_failing_check_exits_1(tmp_path):
    out = tmp_path / "r.json"
    argv = ["verify", "--suite", "stiefel-zonal", "--m", "3", "--max-degree", "1", "--compare-odd-gamma-forms", "--out", str(out)]
    assert main(argv) == 1
    data = json.loads(out.read_text())
    names = {c["name"] for c in data["checks"] if not c["pass"]}
    assert names <= {"gamma odd = closed form A", "gamma odd = closed form B"}


def test_list_suites_command(capsys):
    assert main(["list-suites"]) == 0
    assert capsys.readouterr().out.split() == list_suites()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "monogenic_radon", "list-suites"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.split() == list_suites()
    proc = subprocess.run([sys.executable, "-m", "monogenic_radon", "verify", "--suite", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
