import json

import pytest
from click.testing import CliRunner

from artifact import fixtures, io
from artifact.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)
    return write


def _report(res):
    return json.loads(res.output)


def test_validate_exit_codes():
    ok = run("validate", "--fixture", "F1")
    assert ok.exit_code == 0 and _report(ok)["verdict"] == "dualisable"
    bad = run("validate", "--fixture", "F4-broken")
    assert bad.exit_code == 1 and "NotProjectiveLeft" in _report(bad)["verdict"]


def test_validate_from_file(files):
    p = files("f4.json", io.phylum_to_json(fixtures.f4()))
    assert run("validate", "--in", p).exit_code == 0


def test_nu_and_tau(files):
    kk = files("kk.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[1]]}})
    k00 = files("k00.json", {"modules": {"1": 1, "2": 0}})
    res = run("nu", "--fixture", "F1", "--in", kk)
    assert res.exit_code == 0 and _report(res)["dims"] == [1, 0]
    res = run("tau", "--fixture", "F1", "--in", k00)
    assert res.exit_code == 0 and _report(res)["dims"] == [0, 1]


def test_gproj_verdicts(files):
    kk = files("kk.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[1]]}})
    k00 = files("k00.json", {"modules": {"1": 1}})
    assert run("gproj", "--fixture", "F1", "--in", kk).exit_code == 0
    assert run("gproj", "--fixture", "F1", "--in", k00).exit_code == 1


def test_ar_seq(files):
    k00 = files("k00.json", {"modules": {"1": 1}})
    res = run("ar-seq", "--fixture", "F1", "--in", k00)
    assert res.exit_code == 0
    rep = _report(res)
    assert rep["verdict"] == "almost split"
    assert rep["dims"] == [[0, 1], [1, 1], [1, 0]]
    proj = files("p.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[1]]}})
    assert run("ar-seq", "--fixture", "F1", "--in", proj).exit_code == 1


def test_decompose_and_catalogue(files):
    kk0 = files("kk0.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[0]]}})
    res = run("decompose", "--fixture", "F1", "--in", kk0)
    assert res.exit_code == 0 and len(_report(res)["summands"]) == 2
    res = run("catalogue", "--fixture", "F1", "--max-dim", "2")
    assert res.exit_code == 0 and _report(res)["count"] == 3


def test_pi_commands(files):
    good = files("g.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[0]]}, "back_maps": {"a": [[1]]}})
    bad = files("b.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[1]]}, "back_maps": {"a": [[1]]}})
    assert run("pi-check", "--fixture", "F1", "--in", good).exit_code == 0
    assert run("pi-check", "--fixture", "F1", "--in", bad).exit_code == 1
    res = run("pi-roundtrip", "--fixture", "F1", "--in", good)
    assert res.exit_code == 0 and _report(res)["round_trip_equal"]
    assert run("pi-roundtrip", "--fixture", "F1", "--in", bad).exit_code == 1


def test_describe_bases(files):
    m = files("m.json", {"modules": {"1": 1, "2": {"dim": 2, "action": {"l": [[0, 0], [1, 0]]}}},
                         "maps": {"a": [[1, 0], [0, 1]]}})
    res = run("describe-bases", "--fixture", "F4", "--in", m)
    assert res.exit_code == 0
    rep = _report(res)
    assert rep["algebras"]["2"] == ["e_0", "l"]
    assert len(rep["maps"]["a"]["forward"]["basis"]) == 2


def test_input_errors(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("nu", "--fixture", "F1", "--in", str(bad)).exit_code == 2
    wrong = files("w.json", {"modules": {"1": 1, "2": 1}, "maps": {"a": [[1, 1]]}})
    assert run("nu", "--fixture", "F1", "--in", wrong).exit_code == 2
    assert run("nu", "--fixture", "F1").exit_code == 2
    assert run("--prime", "7", "validate", "--fixture", "F1").exit_code == 2
    assert run("validate", "--fixture", "nope").exit_code == 2


def test_report_header_and_out(files, tmp_path):
    out = tmp_path / "r.json"
    res = run("--seed", "5", "--out", str(out), "validate", "--fixture", "F2")
    assert res.exit_code == 0 and res.output == ""
    rep = json.loads(out.read_text())
    assert rep["verb"] == "validate" and rep["seed"] == 5 and rep["prime"] == 101
    assert len(rep["inputs_digest"]) == 64


def test_timing_goes_to_stderr():
    res = CliRunner().invoke(main, ["--timing", "validate", "--fixture", "F1"])
    assert "validate:" in res.stderr
    assert "validate:" not in res.stdout


def test_suite_is_deterministic():
    a = run("--seed", "3", "suite", "--fixture", "F1")
    b = run("--seed", "3", "suite", "--fixture", "F1")
    assert a.exit_code == 0 and a.output == b.output
    assert _report(a)["verdict"] == "all pass"


def test_thm_d_verb():
    res = run("thm-d", "--fixture", "F1")
    rep = _report(res)
    assert res.exit_code == 0 and rep["verdict"] == "dichotomy holds"
    assert sorted(o["split"] for o in rep["g_star_observations"]) == [False, True]


def test_fixtures_verb(tmp_path):
    res = run("fixtures", str(tmp_path / "fx"))
    assert res.exit_code == 0
    p = tmp_path / "fx" / "F1.json"
    assert run("validate", "--in", str(p)).exit_code == 0
