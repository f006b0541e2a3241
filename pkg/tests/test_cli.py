import json
import subprocess
import sys

import pytest

from matroidkit import catalog
from matroidkit.cli import run
from matroidkit.core import uniform
from matroidkit.io import (
    dumps,
    load_matroid,
    matroid_from_dict,
    matroid_to_dict,
    resolve_ref,
    save_matroid,
)


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fano_file(tmp_path, fano):
    p = tmp_path / "fano.json"
    save_matroid(fano, p)
    return str(p)


@pytest.fixture
def manifest(tmp_path):
    m = {"L": "fano", "N": {"catalog": "U1,2", "relabel": {"1": "x", "2": "y"}},
         "p": "1", "q": "2", "A": ["x"], "B": ["y"]}
    p = tmp_path / "manifest.json"
    p.write_text(json.dumps(m))
    return str(p)


def test_matroid_json_round_trip(small_catalog, tmp_path):
    for M in small_catalog:
        assert matroid_from_dict(json.loads(dumps(matroid_to_dict(M)))) == M
    save_matroid(catalog.fano(), tmp_path / "f.json")
    assert load_matroid(tmp_path / "f.json") == catalog.fano()


def test_resolve_ref_forms(tmp_path, fano):
    save_matroid(fano, tmp_path / "f.json")
    assert resolve_ref("fano") == fano
    assert resolve_ref("f.json", tmp_path) == fano
    assert resolve_ref({"file": "f.json"}, tmp_path) == fano
    assert resolve_ref(matroid_to_dict(fano)) == fano
    got = resolve_ref({"catalog": "U1,2", "relabel": {"1": "x", "2": "y"}})
    assert got == uniform(1, 2, ["x", "y"])
    with pytest.raises(ValueError):
        resolve_ref({"nothing": 1})


def test_cat_and_check(capsys, fano_file):
    code, out, _ = call(capsys, "cat", "fano")
    assert code == 0 and matroid_from_dict(json.loads(out)) == catalog.fano()
    code, out, _ = call(capsys, "check", fano_file, "--json")
    assert code == 0 and json.loads(out) == {"bases": 28, "rank": 3, "size": 7, "status": "ok"}


def test_op_outputs(capsys, fano_file):
    code, out, _ = call(capsys, "op", "delete", fano_file, "7")
    assert code == 0 and json.loads(out)["ground_set"] == list("123456")
    code, out, _ = call(capsys, "op", "shift", fano_file, "1", "2")
    assert code == 0
    code, _, err = call(capsys, "op", "series", fano_file, "1")
    assert code == 2 and "error" in err


def test_queries(capsys, fano_file):
    code, out, _ = call(capsys, "conn", fano_file, "--S", "1", "2", "--T", "3", "--json")
    assert code == 0 and json.loads(out)["local_connectivity"] == 1
    code, out, _ = call(capsys, "incomp", fano_file, "--json")
    assert json.loads(out)["count"] == 21
    code, _, _ = call(capsys, "freer", fano_file, "1", "2")
    assert code == 1


def test_rep_and_gammoid_exit_codes(capsys, fano_file, tmp_path):
    code, out, _ = call(capsys, "rep", fano_file, "--q", "2", "--json")
    assert code == 0 and json.loads(out)["verified"]
    code, out, _ = call(capsys, "rep", fano_file, "--q", "3", "--json")
    assert code == 1 and json.loads(out)["status"] == "not representable (exhaustive)"
    code, out, _ = call(capsys, "rep", fano_file, "--q", "3", "--budget", "1", "--json")
    assert code == 1 and json.loads(out)["status"] == "search truncated"
    code, _, err = call(capsys, "rep", fano_file, "--q", "6", "--json")
    assert code == 2 and json.loads(err)["error"] == "UnsupportedField"
    save_matroid(uniform(2, 4), tmp_path / "u.json")
    code, out, _ = call(capsys, "gammoid", str(tmp_path / "u.json"), "--json")
    assert code == 0 and json.loads(out)["replay_equal"]
    code, _, _ = call(capsys, "gammoid", fano_file)
    assert code == 1


def test_errors_are_reported(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ground_set": ["1", "2", "3", "4"], "bases": [["1", "2"], ["3", "4"]]}))
    code, _, err = call(capsys, "check", str(bad), "--json")
    assert code == 2 and json.loads(err)["error"] == "AxiomViolation"
    code, _, err = call(capsys, "nosuchcommand")
    assert code == 2
    code, _, err = call(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 2 and err.startswith("error:")


def test_construct_and_verify_bundle(capsys, manifest, tmp_path):
    out_dir = tmp_path / "bundle"
    code, out, _ = call(capsys, "construct", manifest, "--out", str(out_dir), "--json")
    assert code == 0 and json.loads(out)["M"] == {"rank": 4, "size": 9}
    for name in ("L", "N", "M", "M1", "M2", "construction", "report"):
        assert (out_dir / f"{name}.json").exists()
    code, out, _ = call(capsys, "verify", str(out_dir), "--json")
    assert code == 0 and json.loads(out)["pass"]
    # a bundle whose M was swapped out must fail
    save_matroid(uniform(4, 9, json.loads((out_dir / "M.json").read_text())["ground_set"]),
                 out_dir / "M.json")
    code, out, _ = call(capsys, "verify", str(out_dir), "--lemma", "minors", "--json")
    assert code == 1 and not json.loads(out)["pass"]


def test_normalize(capsys, tmp_path):
    save_matroid(uniform(1, 2), tmp_path / "u.json")
    code, out, _ = call(capsys, "normalize", str(tmp_path / "u.json"))
    d = json.loads(out)
    assert code == 0 and len(d["A"]) == len(d["B"]) == 3
    assert len(d["matroid"]["ground_set"]) == 6


def test_demo_is_deterministic():
    cmd = [sys.executable, "-m", "matroidkit.cli", "demo", "--json"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
    assert json.loads(runs[0].stdout)["count"] == 21
