"""End-to-end tests for the framecert CLI (path in $FRAMECERT_BIN)."""

import json
import os
import subprocess
import sys

import pytest

BIN = os.environ.get("FRAMECERT_BIN")
if BIN is None:
    pytest.skip("FRAMECERT_BIN not set", allow_module_level=True)


def run(*args, **kw):
    return subprocess.run([BIN, *args], capture_output=True, text=True, **kw)


def write_family(tmp_path, doc, name="family.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


SKEW_BASIS = {
    "ambient_dim": 2,
    "kind": "vectors",
    "backend": "exact",
    "entries": [["1", "0"], ["1", "1"]],
}

ONB2 = {
    "ambient_dim": 2,
    "kind": "vectors",
    "backend": "exact",
    "entries": [["1", "0"], ["0", "1"]],
}


def test_certify_fixture_nr_fails_with_pair_witness():
    r = run("certify", "--fixture", "two_subspace_counterexample_R3", "--property", "nr")
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    assert doc["verdict"] == "fail"
    w = doc["witness"]
    assert w["type"] == "pair"
    # all four projection norms equal, total norms in ratio sqrt(2)
    for nu, nv in w["per_index_norms"]:
        assert abs(nu - nv) < 1e-12
    ratio = max(w["norm_u"], w["norm_v"]) / min(w["norm_u"], w["norm_v"])
    assert abs(ratio - 2 ** 0.5) < 1e-12


def test_certify_canonical_three_hyperplanes():
    r = run("certify", "--fixture", "canonical_three_hyperplanes", "--n", "5",
            "--property", "nr")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["method"] == "exact:canonical-triple"


def test_certify_onb_fails_pr(tmp_path):
    r = run("certify", "--input", write_family(tmp_path, ONB2), "--property", "pr")
    assert r.returncode == 1


def test_reconstruct():
    r = run("reconstruct", "--measurements",
            "3.605551275463989,3.1622776601683795,3.674234614174767")
    assert r.returncode == 0
    assert r.stdout.strip().startswith("3.74165738677")

    r = run("reconstruct", "--measurements", "1,1,1")
    assert float(r.stdout.strip()) == pytest.approx(1.0)

    r = run("reconstruct", "--measurements-sq", "13,10,27/2", "--mode", "exact")
    assert r.returncode == 0
    lines = r.stdout.strip().splitlines()
    assert lines[0].startswith("3.74165738677")
    assert lines[1] == "norm_sq = 14"

    r = run("reconstruct", "--measurements", "0,0,1")
    assert r.returncode == 65


def test_reconstruct_tight(tmp_path):
    frame = write_family(tmp_path, ONB2, "frame.json")
    meas = tmp_path / "meas.json"
    meas.write_text("[3, 4]")
    r = run("reconstruct", "--frame", frame, "--meas", str(meas))
    assert float(r.stdout.strip()) == pytest.approx(5.0)


def test_spark(tmp_path):
    doc = dict(ONB2)
    doc["entries"] = [["1", "0"], ["0", "1"], ["1", "1"]]
    r = run("spark", "--input", write_family(tmp_path, doc))
    assert r.stdout.strip() == "3"


def test_generate_round_trip(tmp_path):
    out = tmp_path / "fam.json"
    r = run("generate", "--kind", "two-basis", "--n", "4", "--seed", "11",
            "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert len(doc["entries"]) == 7
    assert doc["seed"] == 11

    # round trip: the written document re-certifies and re-serializes identically
    r = run("certify", "--input", str(out), "--property", "pr")
    assert r.returncode == 0

    out2 = tmp_path / "fam2.json"
    r = run("generate", "--kind", "two-basis", "--n", "4", "--seed", "11",
            "--out", str(out2))
    assert json.loads(out2.read_text())["entries"] == doc["entries"]


def test_scan(tmp_path):
    r = run("scan", "--input", write_family(tmp_path, SKEW_BASIS), "--radius", "1e-3",
            "--samples", "40", "--seed", "5")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["verdicts"] == {"fail": 40, "unknown": 0, "pass": 0}
    assert doc["first_nonfail"] is None


def test_verify_witness_replay_and_tamper(tmp_path):
    fam = write_family(tmp_path, SKEW_BASIS)
    cert_path = tmp_path / "cert.json"
    r = run("certify", "--input", fam, "--property", "nr", "--out", str(cert_path))
    assert r.returncode == 1

    r = run("verify-witness", "--input", fam, "--certificate", str(cert_path),
            "--property", "nr")
    assert r.returncode == 0
    assert json.loads(r.stdout)["witness_verified"] is True

    cert = json.loads(cert_path.read_text())
    cert["witness"]["side1"] = [1, 2]
    cert["witness"]["side2"] = []
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(cert))
    r = run("verify-witness", "--input", fam, "--certificate", str(bad),
            "--property", "nr")
    assert r.returncode == 1


def test_exit_codes_stable_across_identical_seeds():
    outs = set()
    for _ in range(2):
        r = run("certify", "--fixture", "two_subspace_counterexample_R3",
                "--property", "nr", "--seed", "21")
        doc = json.loads(r.stdout)
        outs.add((r.returncode, doc["verdict"], doc["method"]))
    assert len(outs) == 1


def test_seed_env_override():
    env = dict(os.environ, FRAMECERT_SEED="99")
    r = subprocess.run(
        [BIN, "certify", "--fixture", "two_subspace_counterexample_R3", "--property", "nr"],
        capture_output=True, text=True, env=env)
    assert json.loads(r.stdout)["seed"] == 99


def test_usage_and_data_errors(tmp_path):
    assert run("certify").returncode == 64
    assert run("nonsense").returncode == 64

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("certify", "--input", str(bad), "--property", "nr").returncode == 65

    ragged = write_family(tmp_path, {
        "ambient_dim": 2, "kind": "vectors", "entries": [["1", "0", "0"]]})
    assert run("certify", "--input", ragged, "--property", "nr").returncode == 65
