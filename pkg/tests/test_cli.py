import json
import subprocess
import sys

import pytest

from adic.matrixseq import GenMatrix, Truncated
from adic.diagram import BratteliDiagram


def run_cli(*args):
    """Run the CLI in a subprocess so exit codes go through main()."""
    code = "import sys; from adic.cli import main; main()"
    return subprocess.run([sys.executable, "-c", code] + list(args),
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def chacon_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "chacon.json"
    r = run_cli("example", "chacon", "--emit", str(path))
    assert r.returncode == 0
    return str(path)


@pytest.fixture(scope="module")
def truncated_file(tmp_path_factory):
    t = Truncated([GenMatrix.from_lists(("0", "1"), ("0", "1"),
                                        [[1, 1], [1, 0]])] * 3)
    path = tmp_path_factory.mktemp("cli") / "trunc.json"
    path.write_text(json.dumps(BratteliDiagram(t).to_json()))
    return str(path)


def test_example_list():
    r = run_cli("example", "list", "--json")
    assert r.returncode == 0
    names = json.loads(r.stdout)["available"]
    assert "chacon" in names and "seven-matrix" in names


def test_classify_chacon(chacon_file):
    r = run_cli("classify", chacon_file, "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["finite"] == 2 and out["infinite"] == 0
    rays = sorted(m["ray"] for m in out["measures"]
                  if not m["atomic"])
    assert {"0": "1/3", "1": "2/3"} in rays


def test_classify_is_deterministic(chacon_file):
    a = run_cli("classify", chacon_file, "--json")
    b = run_cli("classify", chacon_file, "--json")
    assert a.stdout == b.stdout


def test_classify_cover_mixed_verdicts(tmp_path):
    emit = tmp_path / "cover.json"
    assert run_cli("example", "ics-cover", "--emit", str(emit)).returncode == 0
    r = run_cli("classify", str(emit), "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["finite"] == 1 and out["infinite"] == 1


def test_classify_truncated_is_undecided(truncated_file):
    r = run_cli("classify", truncated_file, "--json")
    assert r.returncode == 2


def test_count_ergodic_truncated_is_undecided(truncated_file):
    r = run_cli("count-ergodic", truncated_file, "--json")
    assert r.returncode == 2
    out = json.loads(r.stdout)
    assert "exact" not in out


def test_count_ergodic_exact(chacon_file):
    r = run_cli("count-ergodic", chacon_file, "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["count"] == 2 and out["exact"] == 2


def test_missing_file_is_an_error():
    r = run_cli("classify", "/nonexistent/diagram.json")
    assert r.returncode == 1


def test_unknown_example_is_an_error():
    r = run_cli("example", "definitely-not-a-thing")
    assert r.returncode == 1
    assert "unknown example" in r.stderr


def test_decompose_chacon(chacon_file):
    r = run_cli("decompose", chacon_file, "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert len(out["streams"]) == 2


def test_cover_command(tmp_path):
    dy = tmp_path / "dy.json"
    tri = tmp_path / "tri.json"
    run_cli("example", "dyadic", "--emit", str(dy))
    run_cli("example", "triadic", "--emit", str(tri))
    r = run_cli("cover", str(dy), str(tri), "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["cover"]["cycle"] == [[[3, 1], [0, 2]]]


def test_measure_command(chacon_file):
    r = run_cli("measure", chacon_file, "--ray", "1",
                "--cylinder", "1>1.0", "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["mass"] == "2/9"
    assert out["ray"] == {"0": "1/3", "1": "2/3"}


def test_successor_no_successor(chacon_file):
    r = run_cli("successor", chacon_file,
                "--path", "0>0.0|cycle:0>0.0", "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["steps"] == ["NoSuccessor"]


def test_successor_steps(chacon_file):
    r = run_cli("successor", chacon_file,
                "--path", "1>1.0,1>1.1|min@1", "-n", "2", "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert len(out["steps"]) == 2
    assert out["steps"][0]["first_levels"][0] == "1>1.1"


def test_simulate_dyadic_uniform(tmp_path):
    dy = tmp_path / "dy.json"
    run_cli("example", "dyadic", "--emit", str(dy))
    r = run_cli("simulate", str(dy), "--path", "|min@0",
                "--steps", "3", "--depth", "2", "--json")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert set(out["frequencies"].values()) == {"1/4"}
    assert out["truncated"] is False


def test_table_output_is_plain_text(chacon_file):
    r = run_cli("classify", chacon_file)
    assert r.returncode == 0
    assert "finite" in r.stdout
    assert not r.stdout.lstrip().startswith("{")
