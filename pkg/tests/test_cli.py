"""Command-line interface: envelopes, exit codes, round-trips."""

import json

import pytest

from subsumlab.cli import run

SEQ_A = "0^2;4^2;1^2;5^2"


def run_json(capsys, argv):
    code = run(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# worked command lines


def test_subsums_worked_line(capsys):
    code, env = run_json(capsys, ["subsums", "-g", "8", "-s", SEQ_A, "-n", "2"])
    assert code == 0
    assert env["schema"] == "subsum-lab/1"
    assert env["command"] == "subsums" and env["group"] == "8"
    assert env["result"]["subsums"] == ["0", "1", "2", "4", "5", "6"]
    assert env["result"]["size"] == 6
    assert env["result"]["stabilizer"] == ["0", "4"]
    assert isinstance(env["timing_ms"], int)


def test_group_info_worked_line(capsys):
    code, env = run_json(capsys, ["group", "info", "2x4"])
    assert code == 0
    assert env["result"]["order"] == 8
    assert env["result"]["exponent"] == 4
    assert env["result"]["d_star"] == 4


def test_group_info_normalization_notice(capsys):
    code, env = run_json(capsys, ["group", "info", "4x2"])
    assert code == 0
    assert env["result"]["spec"] == "2x4"
    assert "notice" in env["result"]


def test_maincert_worked_line(capsys):
    code, env = run_json(capsys, ["maincert", "-g", "4", "-s", "0^6;2^6",
                                  "--sprime", "0^5;2^5", "-n", "5"])
    assert code == 0
    cert = env["result"]["certificate"]
    assert cert["case"] == "II"
    assert sorted(cert["K"]) == ["0", "2"] and sorted(cert["H"]) == ["0", "2"]
    assert env["verified"] is True


# ---------------------------------------------------------------------------
# text/json numeric parity


def test_text_and_json_same_numbers(capsys):
    code = run(["subsums", "-g", "8", "-s", SEQ_A, "-n", "2"])
    text = capsys.readouterr().out
    assert code == 0
    _, env = run_json(capsys, ["subsums", "-g", "8", "-s", SEQ_A, "-n", "2"])
    for key in ("size", "N", "e", "rho", "bound"):
        assert f"{key}: {env['result'][key]}" in text


# ---------------------------------------------------------------------------
# verify round-trip


def test_verify_roundtrip_maincert(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = run(["maincert", "-g", "4", "-s", "0^6;2^6", "--sprime", "0^5;2^5",
                "-n", "5", "--format", "json", "--out", str(out)])
    assert code == 0
    code, env = run_json(capsys, ["verify", str(out)])
    assert code == 0 and env["verified"] is True and env["violations"] == []


def test_verify_roundtrip_partition(tmp_path, capsys):
    out = tmp_path / "cert.json"
    code = run(["partition", "-g", "8", "-s", SEQ_A, "-n", "2",
                "--format", "json", "--out", str(out)])
    assert code == 0
    code, env = run_json(capsys, ["verify", str(out)])
    assert code == 0 and env["verified"] is True


def test_verify_flags_tampered_certificate(tmp_path, capsys):
    out = tmp_path / "cert.json"
    run(["maincert", "-g", "4", "-s", "0^6;2^6", "--sprime", "0^5;2^5",
         "-n", "5", "--format", "json", "--out", str(out)])
    env = json.loads(out.read_text())
    env["result"]["certificate"]["alpha"] = "1"
    out.write_text(json.dumps(env))
    code, back = run_json(capsys, ["verify", str(out)])
    assert code == 1
    assert back["verified"] is False and back["violations"]


# ---------------------------------------------------------------------------
# other verbs and exit codes


def test_sumset_verbs(capsys):
    code, env = run_json(capsys, ["sumset", "-g", "8", "-s", "0;1", "-n", "3"])
    assert code == 0 and env["result"]["size"] == 4

    code, env = run_json(capsys, ["sumset", "-g", "6", "-s", "0;3",
                                  "--sprime", "0;3"])
    assert code == 0
    assert env["result"]["sumset"] == ["0", "3"]
    assert env["result"]["stabilizer_order"] == 2


def test_example_verb(capsys):
    code, env = run_json(capsys, ["example", "A", "-g", "8", "--h", "4"])
    assert code == 0
    assert env["result"]["expected"]["sigma_size"] == 6


def test_davenport_verb(capsys):
    code, env = run_json(capsys, ["davenport", "-g", "2x2"])
    assert code == 0
    assert env["result"]["davenport"] == 3
    assert env["result"]["sandwich_holds"] is True


def test_hunt_verb(capsys):
    code, env = run_json(capsys, ["hunt", "-g", "5", "-n", "2"])
    assert code == 0
    assert env["result"]["exhaustive"] is True


def test_audit_verb_small(capsys):
    code, env = run_json(capsys, ["audit", "--max-order", "4", "--group-cap",
                                  "4", "--len-cap", "3", "--samples", "20"])
    assert code == 0
    assert env["verified"] is True
    assert env["result"]["instances"] > 0


def test_usage_error_exit_2(capsys):
    assert run(["subsums", "-g", "8", "-s", "bogus", "-n", "2"]) == 2
    assert run(["group", "info", "abc"]) == 2
    assert run(["nonsense-verb"]) == 2


def test_hypotheses_unmet_exit_1(capsys):
    code = run(["maincert", "-g", "8", "-s", SEQ_A, "--sprime", SEQ_A,
                "-n", "2"])
    assert code == 1


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
