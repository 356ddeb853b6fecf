import json

import pytest
from click.testing import CliRunner

from sumsetlab.cli import main

A0 = "0,897,2056,2441,2988,3259,5294,6506,8013,9391,9872"


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, list(args), env=env)

    return invoke


def test_eval_a0(run):
    res = run("eval", "--set", A0, "--h", "7")
    assert res.exit_code == 0
    assert "size: 15551" in res.output


def test_eval_pair(run):
    assert "size: 10" in run("eval", "--set", "0,1", "--h", "9").output


def test_eval_elements(run):
    res = run("eval", "--set", "0,1,3", "--h", "3", "--elements")
    assert "elements: 0,1,2,3,4,5,6,7,9" in res.output


def test_eval_histogram_json(run):
    res = run("eval", "--set", A0, "--h", "3", "--histogram", "--format", "json")
    data = json.loads(res.output)
    doubles = [r["n"] for r in data["histogram"] if r["r"] == 2]
    assert data["size"] == 285 and doubles == [18782]


def test_eval_unsorted_input_is_sorted(run):
    assert "size: 9" in run("eval", "--set", "3,0,1", "--h", "3").output


@pytest.mark.parametrize("bad", ["0,1,1", "0,x", ""])
def test_eval_usage_errors(run, bad):
    assert run("eval", "--set", bad, "--h", "2").exit_code == 2


def test_eval_overflow(run):
    res = run("eval", "--set", f"0,{2**62}", "--h", "3")
    assert res.exit_code == 2
    assert "64-bit" in res.output


def test_range_use_bound(run):
    res = run("range", "--h", "3", "--k", "3", "--use-bound")
    assert res.exit_code == 0
    assert "achieved: 7 9 10" in res.output and "proof_grade: true" in res.output


def test_range_h2_json(run):
    data = json.loads(run("range", "--h", "2", "--k", "5", "--q", "40", "--format", "json").output)
    assert data["achieved"] == list(range(9, 16)) and data["proof_grade"] is False


def test_range_h5_k4(run):
    res = run("range", "--h", "5", "--k", "4", "--q", "60", "--format", "json")
    data = json.loads(res.output)
    assert res.exit_code == 0 and data["proof_grade"] is False
    assert 16 in data["achieved"] and 56 in data["achieved"]
    assert {36, 46, 52, 55} <= set(data["achieved"])


def test_range_usage(run):
    assert run("range", "--h", "2", "--k", "4", "--use-bound").exit_code == 2
    assert run("range", "--h", "3", "--k", "3").exit_code == 2
    assert run("range", "--h", "3", "--k", "3", "--q", "9", "--use-bound").exit_code == 2


def test_range_guard(run):
    res = run("range", "--h", "5", "--k", "4", "--use-bound")
    assert res.exit_code == 3
    assert "estimated job size" in res.output


def test_distribution_csv(run, tmp_path):
    out = tmp_path / "d.csv"
    res = run("distribution", "--h", "5", "--k", "4", "--q", "20", "--format", "csv", "--out", str(out))
    assert res.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# h=5 k=4 q=20 mode=exhaustive")
    assert lines[1] == "# total=4845"


def test_distribution_usage(run):
    assert run("distribution", "--h", "5", "--k", "4", "--q", "100", "--n", "0").exit_code == 2
    assert run("distribution", "--h", "5", "--k", "4", "--q", "100", "--mode", "sampled").exit_code == 2
    assert run("distribution", "--h", "5", "--k", "4", "--q", "3").exit_code == 2


def test_distribution_guard(run):
    res = run("distribution", "--h", "5", "--k", "4", "--q", "100", "--guard", "1000")
    assert res.exit_code == 3


def test_distribution_threads_and_env(run):
    args = ["distribution", "--h", "5", "--k", "4", "--q", "1000", "--mode", "sampled",
            "--n", "40000", "--seed", "0x1", "--format", "csv"]
    one = run(*args, "--threads", "1").output
    four = run(*args, "--threads", "4").output
    env = run(*args, env={"SUMSETLAB_THREADS": "3"}).output
    assert one == four == env


def test_popular(run):
    res = run("popular", "--h-range", "2-3", "--q", "1000", "--n", "20000")
    assert res.exit_code == 0
    assert res.output.count("MATCH") == 2 and "MISMATCH" not in res.output
    assert run("popular", "--h-range", "1-3").exit_code == 2


def test_collisions(run):
    res = run("collisions", "--h", "2", "--k", "7", "--q", "7")
    assert "count_ge3 > count_eq2: 1" in res.output
    res = run("collisions", "--h", "4", "--k", "2", "--q", "100", "--mode", "sampled", "--n", "50",
              "--format", "json")
    data = json.loads(res.output)
    assert all(s["count_eq2"] == s["count_ge3"] == 0 for s in data["sets"])


def test_verify_a0(run):
    res = run("verify", "a0")
    assert res.exit_code == 0
    assert "[11, 66, 285, 986, 2878, 7226, 15551]" in res.output


def test_verify_failure_exit_code(run, monkeypatch):
    from sumsetlab import verify

    monkeypatch.setitem(verify.CASES, "a0", lambda threads: [verify.Check("forced", False, "x")])
    res = run("verify", "a0")
    assert res.exit_code == 1 and "FAIL  forced" in res.output


def test_version(run):
    assert "0.1.0" in run("--version").output
