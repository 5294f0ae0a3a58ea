import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from zkit.dsl import parse, pretty_print
from zkit.interp import Options, REPORT_SCHEMA, run_source

SCRIPTS = Path(__file__).parent / "scripts"
MANIFEST = json.loads((SCRIPTS / "manifest.json").read_text())
ALL_NAMES = MANIFEST["ok"] + MANIFEST["refuted"] + MANIFEST["error"]


def load(name: str) -> str:
    return (SCRIPTS / f"{name}.zk").read_text()


def test_corpus_size():
    assert len(ALL_NAMES) >= 30


@pytest.mark.parametrize("name", ALL_NAMES)
def test_parse_pretty_print_round_trip(name):
    script = parse(load(name))
    printed = pretty_print(script)
    reparsed = parse(printed)
    assert reparsed == script
    assert pretty_print(reparsed) == printed


@pytest.mark.parametrize("name", ALL_NAMES)
def test_corpus_runs_and_validates(name):
    report = run_source(load(name), Options(seed=11))
    jsonschema.validate(report.to_json(), REPORT_SCHEMA)
    expected = ("ok" if name in MANIFEST["ok"]
                else "refuted" if name in MANIFEST["refuted"] else "error")
    codes = {"ok": 0, "refuted": 1, "error": 2}
    assert report.exit_code == codes[expected], [
        (r.status, r.cmd, r.result) for r in report.results
        if r.status != "ok"]


@pytest.mark.parametrize("name", MANIFEST["ok"])
def test_certificates_reverify(name, tmp_path):
    """Feed every emitted certificate back through the verify command."""
    report = run_source(load(name), Options(seed=11))
    out = tmp_path / f"{name}.json"
    out.write_text(json.dumps(report.to_json()))
    verify_report = run_source(f'verify "{out}";')
    (res,) = verify_report.results
    assert res.status == "ok", res.result
    n_certs = sum(1 for r in report.results if r.certificate is not None)
    assert res.result["checked"] == n_certs
    assert res.result["passed"] == n_certs


def _tamper_and_verify(tmp_path, name, mutate):
    report = run_source(load(name), Options(seed=11))
    data = report.to_json()
    for entry in data["results"]:
        if entry["certificate"] is not None:
            mutate(entry["certificate"])
            break
    out = tmp_path / f"tampered_{name}.json"
    out.write_text(json.dumps(data))
    (res,) = run_source(f'verify "{out}";').results
    assert res.status == "refuted", res.result
    assert res.result["failures"]


def test_verify_flags_tampered_reports(tmp_path):
    def bump_cofactor(cert):
        cert["cofactors"][0] = "1000"

    def bump_glued(cert):
        assert cert["claim"] == "glue"
        cert["glued"] = "12345"

    def bump_image(cert):
        assert cert["claim"] == "point"
        cert["images"][0] = "0"

    _tamper_and_verify(tmp_path, "basics_z", bump_cofactor)
    _tamper_and_verify(tmp_path, "glue_z", bump_glued)
    _tamper_and_verify(tmp_path, "member_f5", bump_image)


def test_verify_missing_file():
    report = run_source('verify "does-not-exist.json";')
    assert report.results[0].status == "error"


def test_seed_determinism():
    source = load("qcqs_qx")
    r1 = run_source(source, Options(seed=5)).to_json()
    r2 = run_source(source, Options(seed=5)).to_json()
    strip = lambda rep: [{k: v for k, v in r.items() if k != "ms"}
                         for r in rep["results"]]
    assert strip(r1) == strip(r2)


def test_cli_subprocess_json_and_exit_codes(tmp_path):
    env_script = SCRIPTS / "basics_z.zk"
    proc = subprocess.run(
        [sys.executable, "-m", "zkit.cli", str(env_script), "--json"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    data = json.loads(proc.stdout)
    jsonschema.validate(data, REPORT_SCHEMA)
    proc = subprocess.run(
        [sys.executable, "-m", "zkit.cli",
         str(SCRIPTS / "check_refuted.zk")],
        capture_output=True, text=True)
    assert proc.returncode == 1
    proc = subprocess.run(
        [sys.executable, "-m", "zkit.cli",
         str(SCRIPTS / "unknown_name.zk"), "--json"],
        capture_output=True, text=True)
    assert proc.returncode == 2
    bad = tmp_path / "bad.zk"
    bad.write_text("ring R = ;")
    proc = subprocess.run(
        [sys.executable, "-m", "zkit.cli", str(bad)],
        capture_output=True, text=True)
    assert proc.returncode == 2
    assert "syntax error" in proc.stderr


def test_cli_env_seed(tmp_path, monkeypatch):
    import os
    script = tmp_path / "seeded.zk"
    script.write_text(load("qcqs_z"))
    env = dict(os.environ, ZKIT_SEED="17")
    p1 = subprocess.run(
        [sys.executable, "-m", "zkit.cli", str(script), "--json"],
        capture_output=True, text=True, env=env)
    p2 = subprocess.run(
        [sys.executable, "-m", "zkit.cli", str(script), "--json",
         "--seed", "17"],
        capture_output=True, text=True, env=dict(os.environ))
    strip = lambda raw: [{k: v for k, v in r.items() if k != "ms"}
                         for r in json.loads(raw)["results"]]
    assert strip(p1.stdout) == strip(p2.stdout)


def test_cli_max_pairs_cap():
    source = ("ring S = Q[x,y,z];"
              "radical-member x in [x^2 + 2*y^2 + 2*z^2 - 5*x,"
              " 2*x*y + 2*y*z - 5*y, x + 2*y + 2*z - 5];")
    report = run_source(source, Options(max_pairs=1))
    assert report.results[1].status == "error"
    assert report.results[1].result["kind"] == "ResourceExceeded"
