import json
import subprocess
import sys

import pytest

from paramodular.cli import JobConfig, main, parse_T


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_coeff_level_one(capsys):
    rc, out, _ = run(capsys, "coeff", "--weight", "4", "--char", "1:0", "--T", "1,0,0")
    assert rc == 0
    rec = json.loads(out)
    assert rec["value"]["coeffs"] == ["240"] and rec["rank"] == 1
    assert all(c["pass"] for c in rec["certificates"])


def test_coeff_zero_matrix_nontrivial_character(capsys):
    rc, out, _ = run(capsys, "coeff", "--char", "5:2", "--T", "0,0,0")
    assert rc == 0 and json.loads(out)["value"]["coeffs"] == ["0"]


def test_odd_character_exits_2(capsys):
    rc, _, err = run(capsys, "coeff", "--char", "3:1", "--T", "0,0,0")
    assert rc == 2 and "odd" in err


@pytest.mark.parametrize("T", ["1,5,1", "-1,0,0"])
def test_not_psd_exits_2(capsys, T):
    # a leading minus needs the --T=... spelling
    rc, _, err = run(capsys, "coeff", f"--T={T}")
    assert rc == 2 and err.startswith("error:")


def test_bad_weight_exits_2(capsys):
    rc, _, _ = run(capsys, "coeff", "--weight", "3", "--T", "1,0,0")
    assert rc == 2


def test_table_rerun_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        rc, _, err = run(capsys, "table", "--char", "5:2", "--n-max", "2", "--m-max", "50", "--format", "csv", "--out", str(p))
        assert rc == 0
        assert json.loads(err)["summary"]["certified"] is True
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "n,r,m,rank,order,coeffs,re,im,certified"
    assert len(lines) > 10


def test_table_empty_bounds_header_only(capsys):
    rc, out, err = run(capsys, "table", "--n-max", "0", "--m-max", "0", "--format", "csv")
    assert rc == 0 and out == "n,r,m,rank,order,coeffs,re,im,certified\n"
    assert json.loads(err)["summary"]["records"] == 0


def test_table_jsonl_and_json(capsys):
    rc, out, _ = run(capsys, "table", "--n-max", "1", "--m-max", "1", "--format", "jsonl")
    rows = [json.loads(x) for x in out.splitlines()]
    assert rc == 0 and [r["T"] for r in rows][0] == {"n": 0, "r": 0, "m": 1}
    rc, out, _ = run(capsys, "table", "--n-max", "1", "--m-max", "1", "--format", "json")
    assert json.loads(out) == rows


def test_env_default_output(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PARAMODULAR_OUT", str(tmp_path))
    rc, out, _ = run(capsys, "table", "--char", "5:2", "--weight", "6", "--n-max", "1", "--format", "jsonl")
    assert rc == 0 and out == ""
    assert (tmp_path / "table_5-2_k6.jsonl").exists()


def test_chars(capsys):
    rc, out, _ = run(capsys, "chars", "--modulus", "5", "--primitive")
    labels = [json.loads(x)["label"] for x in out.splitlines()]
    assert rc == 0 and labels == ["5:1", "5:2", "5:3"]


def test_verify_epsilon(capsys):
    rc, out, _ = run(capsys, "verify", "epsilon", "--max-conductor", "12")
    doc = json.loads(out)
    assert rc == 0 and doc["pass"] is True


def test_verify_fields_small(capsys):
    rc, out, _ = run(capsys, "verify", "fields", "--char", "5:2", "--n-max", "1", "--m-max", "25")
    assert rc == 0 and json.loads(out)["pass"] is True


def test_config_roundtrip():
    cfg = JobConfig(weight=6, char="5:2", T=[(1, 5, 25)], m_max=50)
    again = JobConfig.from_dict(json.loads(cfg.canonical()))
    assert again == cfg and again.canonical() == cfg.canonical()
    assert JobConfig(char="5:2").m_bound == 50
    with pytest.raises(ValueError):
        JobConfig.from_dict({"weight": 4, "bogus": 1})
    with pytest.raises(ValueError):
        JobConfig(format="xml")
    with pytest.raises(ValueError):
        JobConfig(char="five")


def test_parse_T():
    assert parse_T("1,-2,3") == (1, -2, 3)
    with pytest.raises(Exception):
        parse_T("1,2")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "paramodular", "coeff", "--T", "1,1,1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"]["coeffs"] == ["13440"]
