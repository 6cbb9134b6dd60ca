"""Serialization round-trips and CLI integration: exit codes, determinism."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from torsiongate.corpus import load_corpus, corpus_curve, corpus_field
from torsiongate.errors import SpecError
from torsiongate.serialize import (curve_from_json, curve_to_json, dumps_canonical,
                                   field_from_json, field_to_json, matgroup_from_json,
                                   matgroup_to_json, poly_from_json, poly_to_json)
from torsiongate.groups import MatGroup
from torsiongate.polyq import PolyQ


def test_poly_roundtrip():
    f = PolyQ([-2, 0, 0, 1])
    assert poly_to_json(f) == ["-2/1", "0/1", "0/1", "1/1"]
    assert poly_from_json(poly_to_json(f)) == f


def test_corpus_roundtrips():
    corpus = load_corpus()
    for entry in corpus["curves"]:
        c = corpus_curve(entry)
        assert curve_from_json(curve_to_json(c)) == c
    for entry in corpus["extensions"]:
        K = corpus_field(entry)
        assert field_from_json(field_to_json(K)) == K


def test_matgroup_roundtrip():
    G = MatGroup(5, [(1, 1, 0, 1), (2, 0, 0, 1)])
    assert matgroup_from_json(matgroup_to_json(G)) == G


def test_reducible_field_spec_names_factor():
    with pytest.raises(Exception) as err:
        field_from_json({"defining_poly": ["0/1", "-1/1", "1/1"]})  # x^2 - x
    assert "x" in str(err.value)


def test_singular_curve_spec_rejected():
    with pytest.raises(Exception):
        curve_from_json({"field": {"defining_poly": ["0/1", "1/1"]},
                         "a_invariants": ["0/1", "0/1", "0/1", "0/1", "0/1"]})


def test_bad_rational_literal():
    with pytest.raises(SpecError):
        poly_from_json(["one half"])


# ----- CLI -----

def _run_cli(args, files=None, tmp_path=None):
    cmd = [sys.executable, "-m", "torsiongate.cli"] + args
    return subprocess.run(cmd, capture_output=True, text=True, timeout=600)


@pytest.fixture()
def specs(tmp_path):
    curve = {"field": {"defining_poly": ["0/1", "1/1"], "label": "Q"},
             "a_invariants": ["0/1", "-1/1", "1/1", "-10/1", "-20/1"]}
    ext = {"defining_poly": ["-2/1", "0/1", "0/1", "1/1"], "label": "x3-2"}
    cpath = tmp_path / "c.json"
    epath = tmp_path / "L.json"
    cpath.write_text(json.dumps(curve))
    epath.write_text(json.dumps(ext))
    return str(cpath), str(epath)


def test_cli_torsion(specs):
    cpath, epath = specs
    res = _run_cli(["torsion", "--curve", cpath, "--field", epath, "--no-timings"])
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["structure"] == "Z/5"


def test_cli_cyc_image():
    res = _run_cli(["cyc-image", "--base", "Q", "--ell", "7"])
    assert res.returncode == 0
    assert json.loads(res.stdout)["order"] == 6


def test_cli_galois(specs, tmp_path):
    _, epath = specs
    poly = tmp_path / "g.json"
    poly.write_text(json.dumps(["-2/1", "0/1", "0/1", "1/1"]))
    res = _run_cli(["galois", "--ext", str(poly)])
    assert res.returncode == 0
    assert json.loads(res.stdout)["kind"] == "S3"


def test_cli_check_verify(specs):
    cpath, epath = specs
    res = _run_cli(["check", "--curve", cpath, "--base", "Q", "--ext", epath,
                    "--ell", "13", "--verify", "--no-timings"])
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["verdict"]["result_id"] == "thm_nonGal_p_b"
    assert payload["agrees"] is True


def test_cli_check_deterministic_output(specs):
    cpath, epath = specs
    args = ["check", "--curve", cpath, "--ext", epath, "--ell", "5",
            "--verify", "--no-timings"]
    out1 = _run_cli(args).stdout
    out2 = _run_cli(args).stdout
    assert out1 == out2 and out1


def test_cli_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    res = _run_cli(["torsion", "--curve", str(bad)])
    assert res.returncode == 2
    res2 = _run_cli(["torsion"])
    assert res2.returncode == 2  # missing required flag


def test_cli_lemmas_borel():
    res = _run_cli(["lemmas", "--name", "borel", "--ell", "3"])
    assert res.returncode == 0
    payload = json.loads(res.stdout)
    assert payload["total_failures"] == 0
    assert payload["reports"][0]["cases_checked"] > 0


def test_cli_batch_reduced_corpus(tmp_path):
    corpus = {
        "schema_version": "1",
        "curves": [{"label": "11a1",
                    "a_invariants": ["0/1", "-1/1", "1/1", "-10/1", "-20/1"],
                    "torsion_over_Q": [1, 5]}],
        "extensions": [{"label": "x3-2",
                        "defining_poly": ["-2/1", "0/1", "0/1", "1/1"]}],
        "primes": [5, 7],
    }
    cpath = tmp_path / "corpus.json"
    cpath.write_text(json.dumps(corpus))
    out = tmp_path / "report.json"
    res = _run_cli(["batch", "--input", str(cpath), "--jobs", "2",
                    "--output", str(out), "--no-timings"])
    assert res.returncode == 0
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0
    assert report["summary"]["pass"] >= 2  # two criterion cells plus najman


def test_emit_report_text_carries_result_ids():
    from torsiongate.corpus import emit_report
    report = {"schema_version": "1",
              "tasks": [{"kind": "criterion", "curve": "11a1", "extension": "x3-2",
                         "ell": 13, "status": "pass",
                         "verdict": {"result_id": "thm_nonGal_p_b"}}],
              "summary": {"pass": 1, "fail": 0, "not_applicable": 0, "cap_exceeded": 0}}
    text = emit_report(report, "text")
    assert "thm_nonGal_p_b" in text and "PASS" in text and "summary:" in text
    js = emit_report(report, "json")
    assert js == emit_report(report, "json")  # canonical and stable


def test_cli_degree_cap_env(specs, tmp_path, monkeypatch):
    cpath, _ = specs
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"defining_poly":
                               [str(c) + "/1" for c in [-2] + [0] * 69 + [1]]}))
    monkeypatch.setenv("TORSIONGATE_DEGREE_CAP", "8")
    import torsiongate.cli as cli
    rc = cli.main(["torsion", "--curve", cpath, "--field", str(big)])
    assert rc in (0, 2)  # cap refusal is reported, not a crash
