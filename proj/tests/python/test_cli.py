import json
import os
import subprocess

import pytest

CLI = os.environ.get("DWORK_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="DWORK_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_check_table_row_passes():
    r = run("check", "--param", "d=9;a=0,0,0;b=1,2,6;c=3,7,8")
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["R"] and rep["BM"]["pass"] and rep["D"]["pass"]
    assert rep["hodge"]["1"] == [2, 3, 4]


def test_check_non_regular_exits_1():
    r = run("check", "--param", "d=9;a=0,0,1,1;b=2,3,7,8")
    assert r.returncode == 1
    assert json.loads(r.stdout)["R"] is False


@pytest.mark.parametrize("literal", ["d=9;a=0,0,0", "d=9;a=0,0,0;b=1,2,3", "garbage"])
def test_check_malformed_exits_2(literal):
    assert run("check", "--param", literal).returncode == 2


def test_usage_errors_exit_2():
    assert run().returncode == 2
    assert run("search", "--n", "4", "--partition", "2,1").returncode == 2
    assert run("search", "--n", "4", "--partition", "2,2", "--exhaustive", "--witness").returncode == 2
    assert run("check", "--param", "d=9;a=0,0,0;b=1,2,6", "--profile", "loose").returncode == 2
    assert run("check", "--param", "d=9;a=0,0,0;b=1,2,6", "--format", "xml").returncode == 2


def test_search_two_two():
    r = run("search", "--n", "4", "--partition", "2,2", "--d-min", "3", "--d-max", "30", "--format", "json")
    assert r.returncode == 0
    assert json.loads(r.stdout)["passing_d"] == [9, 12, 15, 20, 21, 24, 27]


def test_search_three_one_tsv():
    r = run("search", "--n", "4", "--partition", "3,1", "--d-max", "30")
    assert r.returncode == 0
    lines = r.stdout.strip().split("\n")
    assert lines[0] == "n\td\talpha\tbeta\tc\tU\tflags"
    assert sorted({int(l.split("\t")[1]) for l in lines[1:]}) == [18, 20, 24, 28, 30]


def test_search_empty_partition_exits_0():
    r = run("search", "--n", "6", "--partition", "2,2,2", "--d-max", "14")
    assert r.returncode == 0
    assert r.stdout.strip() == "n\td\talpha\tbeta\tc\tU\tflags"


def test_search_output_is_reproducible():
    args = ("search", "--n", "4", "--partition", "2,2", "--d-max", "16", "--format", "json")
    assert run(*args).stdout == run(*args, "--jobs", "4").stdout


def test_search_checkpoint_resume(tmp_path):
    ck = str(tmp_path / "ck.tsv")
    args = ("search", "--n", "4", "--partition", "2,2", "--d-max", "15", "--checkpoint", ck)
    first = run(*args)
    second = run(*args)
    assert first.returncode == 0 and first.stdout == second.stdout
    assert run(*args, "--profile", "strict").returncode == 2


def test_tables_special():
    r = run("tables", "--which", "special", "--format", "json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert len(doc["rows"]) == 19


def test_verify_commands():
    assert run("verify-monodromy", "--param", "d=18;a=0,0,0,3;b=4,11,16,17").returncode == 0
    assert run("verify-ode", "--param", "d=21;a=0,0,0,0,0;b=1,2,4,15,20", "--order", "30").returncode == 0
    r = run("verify-jacobi", "--param", "d=9;a=0,0,0;b=1,2,6", "--ell", "19")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["hodge_match"] is True
    assert doc["embeddings"]["1"]["hodge"] == [2, 3, 4]
    assert run("verify-jacobi", "--param", "d=9;a=0,0,0;b=1,2,6", "--ell", "23").returncode == 2
