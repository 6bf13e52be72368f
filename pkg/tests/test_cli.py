import json
import shutil
import subprocess
import sys

import pytest

from phk import __version__, cli
from phk.fixtures import data_path

REPORT_KEYS = {"command", "verdicts", "dimensions", "witnesses", "seed", "version"}


def phk(*args):
    proc = subprocess.run([sys.executable, "-m", "phk.cli", *map(str, args)], capture_output=True, text=True)
    assert "Traceback" not in proc.stderr, proc.stderr
    return proc


def report(proc):
    return json.loads(proc.stdout)


def test_galois_e1_all_true():
    proc = phk("galois", data_path("E1"))
    assert proc.returncode == 0
    r = report(proc)
    assert set(r) == REPORT_KEYS
    assert r["version"] == __version__
    assert all(r["verdicts"][f"c{i}"] == "pass" for i in range(1, 8))
    assert r["verdicts"]["agreement"] == "pass"


def test_galois_e3_agreement_versus_require_galois():
    ok = phk("galois", data_path("E3"), "--agreement")
    assert ok.returncode == 0
    r = report(ok)
    assert all(r["verdicts"][f"c{i}"] == "fail" for i in range(1, 8))
    assert r["verdicts"]["agreement"] == "pass"
    assert phk("galois", data_path("E3"), "--require-galois").returncode == 1


def test_perturbed_action_refused():
    for command in ("frobenius", "galois"):
        proc = phk(command, data_path("E3_perturbed"))
        assert proc.returncode == 1
        r = report(proc)
        assert r["verdicts"] == {"precondition": "fail"}
        assert any(f["axiom"] == "PA4" for f in r["witnesses"]["precondition_report"]["failures"])


def test_check_action_locates_pa4_failure():
    proc = phk("check-action", data_path("E3_perturbed"))
    assert proc.returncode == 1
    r = report(proc)
    assert r["verdicts"]["symmetric"] == "fail"
    assert r["witnesses"]["symmetric_failures"][0] == {"axiom": "PA4", "witness": [1, 1, 0]}


@pytest.mark.parametrize("stem, is_global", [("E2", False), ("grading", True)])
def test_check_action_reports_globality(stem, is_global):
    assert report(phk("check-action", data_path(stem)))["witnesses"]["global"] is is_global


@pytest.mark.parametrize("stem", ["E1", "E2", "E3", "E1_matrix", "grading"])
def test_action_commands_pass_on_fixtures(stem):
    for command in ("check-action", "invariants", "smash", "frobenius"):
        assert phk(command, data_path(stem)).returncode == 0, (stem, command)


def test_smash_dimensions():
    r = report(phk("smash", data_path("E3")))
    assert r["dimensions"]["smash"] == 4
    assert r["dimensions"]["partial_smash"] == 3
    assert r["dimensions"]["fixed_part"] == 2


@pytest.mark.parametrize("stem", ["kC2", "kC3", "kS3", "kC2_dual"])
def test_check_hopf_passes(stem):
    proc = phk("check-hopf", data_path(stem))
    assert proc.returncode == 0
    assert report(proc)["dimensions"]["left_integrals"] == 1


def test_check_hopf_reports_sweedler_finding():
    proc = phk("check-hopf", data_path("H4"))
    assert proc.returncode == 1
    r = report(proc)
    assert r["verdicts"]["hopf_axioms"] == "pass"
    assert r["verdicts"]["frobenius_example"] == "fail"
    assert r["witnesses"]["notes"]


def test_input_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert phk("galois", bad).returncode == 2
    assert phk("galois", tmp_path / "missing.json").returncode == 2
    assert phk("galois", data_path("kC2")).returncode == 2
    assert phk("galois").returncode == 2
    assert phk("unknown-command", data_path("E1")).returncode == 2


def test_composite_field_override_is_input_error():
    proc = phk("galois", data_path("E1"), "--field", "Fp:4")
    assert proc.returncode == 2
    assert "not prime" in report(proc)["witnesses"]["error"]


def test_field_override_runs_over_prime_field():
    r = report(phk("galois", data_path("E1"), "--field", "Fp:5"))
    assert r["witnesses"]["fixture"]["field"] == "Fp:5"
    assert r["verdicts"]["agreement"] == "pass"


def test_reports_are_deterministic(tmp_path):
    a = phk("galois", data_path("E1"), "--json", tmp_path / "a.json")
    b = phk("galois", data_path("E1"))
    assert a.stdout == b.stdout == (tmp_path / "a.json").read_text()


def test_fuzz_is_deterministic_and_records_seed():
    a = phk("fuzz", "--seed", "11", "--count", "12")
    b = phk("fuzz", "--seed", "11", "--count", "12")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert report(a)["seed"] == 11
    assert "seed 11" in a.stderr


def test_console_script_installed():
    exe = shutil.which("phk")
    if exe is None:
        pytest.skip("package not installed with its console script")
    assert subprocess.run([exe, "galois", str(data_path("E2"))], capture_output=True).returncode == 0


def test_minimize_instance_drops_irrelevant_points():
    # a fake failure that only needs point 2 to be present
    def failing(n, orbits, subset):
        return 2 in subset

    orbits, subset = cli.minimize_instance(4, [2, 2, 4], [0, 2, 5], failing)
    assert subset == [2]
    assert orbits == [2, 2]


def test_fuzz_writes_minimized_reproducer(tmp_path, monkeypatch, capsys):
    def fake(n, orbits, subset, field):
        return "forced" if len(subset) >= 1 and n == 3 else None

    monkeypatch.setattr(cli, "instance_failure", fake)
    code = cli.main(["fuzz", "--seed", "3", "--count", "3", "--out-dir", str(tmp_path)])
    assert code == 1
    out = json.loads(capsys.readouterr().out)
    failures = out["witnesses"]["failures"]
    assert len(failures) == 1 and failures[0]["group"] == "C3"
    assert len(failures[0]["subset"]) == 1
    written = json.loads(open(failures[0]["reproducer"]).read())
    assert written["group_action"]["table"] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    assert cli.main(["check-action", failures[0]["reproducer"]]) == 0
