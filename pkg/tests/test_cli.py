import json
import subprocess
import sys

from isurf.cli import main


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "isurf.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_list_text_and_json(tmp_path):
    code, out, _ = run_cli("--list")
    assert code == 0
    assert "table1" in out and "prop-no-5-2" in out
    code, out, _ = run_cli("--list", "--format", "json")
    entries = json.loads(out)
    names = [e["name"] for e in entries]
    assert len(names) >= 12
    for required in ("table1", "table2", "gale-rays", "generators", "binomials",
                     "derive-r11", "cor-pfaffian", "lemma-smoothing",
                     "hilbert-series", "wps51", "family-munu", "prop-no-5-2",
                     "examples-figures"):
        assert required in names
    assert names == sorted(names)
    assert all(e["anchor"] for e in entries)


def test_list_tag_filter():
    code, out, _ = run_cli("--list", "--tag", "section5", "--format", "json")
    entries = json.loads(out)
    names = {e["name"] for e in entries}
    assert {"table2", "prop-no-5-2", "examples-figures", "family-munu"} <= names
    assert "generators" not in names


def test_single_scenario_json_schema(tmp_path):
    out_path = tmp_path / "report.json"
    code = main(["--scenario", "table1", "--format", "json",
                 "--out", str(out_path)])
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["scenario"] == "table1"
    assert report["status"] == "pass"
    assert report["seed"] == 0
    assert "elapsed_ms" not in report
    for c in report["checks"]:
        assert set(c) == {"desc", "expected", "actual", "provenance", "anchor", "ok"}
        assert c["provenance"] in ("reference", "derived", "direct")


def test_scenario_with_params_and_timing():
    code, out, _ = run_cli("--scenario", "wps51", "--param", "tau=0",
                           "--format", "json", "--timing")
    assert code == 0
    report = json.loads(out)
    assert "elapsed_ms" in report


def test_unknown_scenario_and_bad_params():
    code, _, err = run_cli("--scenario", "nope")
    assert code == 2 and "unknown scenario" in err
    code, _, err = run_cli("--scenario", "table1", "--param", "zeta=1")
    assert code == 2
    code, _, err = run_cli("--scenario", "table1", "--param", "theta")
    assert code == 2
    code, _, _ = run_cli()
    assert code == 2


def test_text_rendering():
    code, out, _ = run_cli("--scenario", "hilbert-series")
    assert code == 0
    assert "scenario hilbert-series: PASS" in out
    assert "[ok ]" in out
