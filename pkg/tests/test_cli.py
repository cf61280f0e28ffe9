"""Command line surface: subcommands, exit codes, output formats."""

import json
import subprocess
import sys

BASE = [sys.executable, "-m", "puzzlebench.cli"]


def run_cli(*args, stdin=""):
    return subprocess.run(
        BASE + list(args), input=stdin, capture_output=True, text=True, timeout=120
    )


def test_bench_report_structure(tmp_path):
    out_path = tmp_path / "report.json"
    proc = run_cli(
        "bench", "--puzzle", "fifteen", "--params", "2x2",
        "--episodes", "20", "--policy", "random", "--seed", "5",
        "--records", "--out", str(out_path),
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out_path.read_text())
    assert report["config"]["puzzle"] == "fifteen"
    assert report["config"]["params"] == "2x2"
    assert report["stats"]["n_episodes"] == 20
    assert len(report["records"]) == 20
    assert {r["outcome"] for r in report["records"]} <= {"solved", "failed", "truncated"}
    assert [r["seed"] for r in report["records"]] == list(range(5, 25))


def test_bench_masked_policy_and_early_term():
    proc = run_cli(
        "bench", "--puzzle", "flood", "--params", "3x3c6m5",
        "--episodes", "10", "--policy", "random-masked", "--early-term",
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["config"]["early_term"] == 10
    assert report["config"]["policy"] == "random-masked"


def test_bench_config_error_exit_2():
    proc = run_cli("bench", "--puzzle", "flood", "--params", "0x0")
    assert proc.returncode == 2
    assert "error" in proc.stderr.lower() or proc.stderr


def test_bench_bad_policy_exit_2():
    proc = run_cli(
        "bench", "--puzzle", "flood", "--params", "3x3c6m5", "--policy", "alphazero"
    )
    assert proc.returncode == 2


def test_optimal_exit_codes():
    ok = run_cli("optimal", "--puzzle", "untangle", "--params", "6")
    assert ok.returncode == 0 and ok.stdout.strip() == "79"
    bad = run_cli("optimal", "--puzzle", "untangle", "--params", "9")
    assert bad.returncode == 2


def test_gen_json_lines():
    proc = run_cli(
        "gen", "--puzzle", "samegame", "--params", "2x3c3s2",
        "--count", "3", "--seed", "4",
    )
    assert proc.returncode == 0, proc.stderr
    lines = [json.loads(l) for l in proc.stdout.splitlines() if l.strip()]
    assert len(lines) == 3
    for i, rec in enumerate(lines):
        assert rec["puzzle"] == "samegame"
        assert rec["params"] == "2x3c3s2"
        assert rec["index"] == i
        assert len(rec["state"]["grid"]) == 6
    # seeded gen is reproducible
    again = run_cli(
        "gen", "--puzzle", "samegame", "--params", "2x3c3s2",
        "--count", "3", "--seed", "4",
    )
    assert again.stdout == proc.stdout


def test_play_session(tmp_path):
    png = tmp_path / "board.png"
    proc = run_cli(
        "play", "--puzzle", "fifteen", "--params", "2x2", "--seed", "7",
        "--png", str(png),
        stdin="DOWN\nUP\n3\nq\n",
    )
    assert proc.returncode == 0, proc.stderr
    assert "actions: UP, DOWN, LEFT, RIGHT" in proc.stdout
    assert "reward=" in proc.stdout
    assert png.read_bytes().startswith(b"\x89PNG")


def test_play_rejects_unknown_action():
    proc = run_cli(
        "play", "--puzzle", "flood", "--params", "3x3c6m5", "--seed", "1",
        stdin="FROBNICATE\nq\n",
    )
    assert proc.returncode == 0
    assert "unknown action" in proc.stdout


def test_serve_listen_flag_validation():
    proc = run_cli("serve", "--listen", "nonsense")
    assert proc.returncode == 2


def test_bench_script_policy(tmp_path):
    script = tmp_path / "policy.txt"
    script.write_text("SELECT DOWN SELECT RIGHT SELECT\n")
    proc = run_cli(
        "bench", "--puzzle", "flood", "--params", "3x3c6m5",
        "--episodes", "5", "--policy", f"script:{script}", "--max-steps", "200",
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["stats"]["n_episodes"] == 5
