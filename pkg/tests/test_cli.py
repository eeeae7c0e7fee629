import json

import pytest

from sigmasop import schemas
from sigmasop.cli import main
from sigmasop.dot import parse_dot_edges


@pytest.fixture
def run(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def _json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def test_pattern_gen_and_check(run):
    assert run("pattern", "gen", "--kind", "tp2", "--rows", "2", "--cols", "3", "-o", "p.json")[0] == 0
    schemas.validate(_json("p.json"), schemas.PATTERN)
    code, out, _ = run("pattern", "check", "p.json")
    assert code == 0
    report = json.loads(out)
    schemas.validate(report, schemas.REPORT)
    status = {c["name"]: c["status"] for c in report["checks"]}
    assert all(status[k] == "pass" for k in ("C1", "C2", "M1", "M2", "M3"))


def test_pattern_check_single_axiom(run):
    run("pattern", "gen", "--kind", "sop3", "--n", "2", "-o", "p.json")
    code, out, _ = run("pattern", "check", "p.json", "--axiom", "m")
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert sorted(checks["M3"]["witnesses"]) == ["(-2,0)", "(2,1)"]
    assert run("pattern", "check", "p.json", "--axiom", "c")[0] == 0


def test_sigma_build_and_dot(run):
    assert run("sigma", "build", "--op", "3", "-o", "s.json")[0] == 0
    code, out, _ = run("export", "dot", "s.json")
    assert code == 0
    assert set(parse_dot_edges(out)) == {("α0", "β1"), ("α0", "β2"), ("α1", "β2")}
    assert "rankdir=BT" in out


def test_sigma_build_audit_and_verify(run):
    run("pattern", "gen", "--kind", "atp", "--depth", "3", "-o", "p.json")
    assert run("sigma", "build", "--pattern", "p.json", "--audit", "-o", "a.json")[0] == 0
    audit = _json("a.json")
    assert set(audit) == {"poset", "r0", "r1", "r2"}
    schemas.validate(audit["poset"], schemas.POSET)
    code, out, _ = run("sigma", "verify", "--pattern", "p.json", "--human")
    assert code == 0 and "P3" in out


def test_sigma_ip_bound(run):
    assert run("sigma", "build", "--ip", "6")[0] == 2
    assert run("sigma", "build", "--ip", "6", "--ip-bound", "6", "-o", "ip.json")[0] == 0
    assert len(_json("ip.json")["elements"]) == 6 + 64


def test_env_bound(run, monkeypatch):
    monkeypatch.setenv("SIGMASOP_IP_SETS_BOUND", "5")
    assert run("witness", "ip", "--n", "5", "-o", "w.json")[0] == 0
    monkeypatch.setenv("SIGMASOP_IP_SETS_BOUND", "x")
    assert run("witness", "ip", "--n", "2")[0] == 2


def test_witness_roundtrip_negative(run):
    run("pattern", "gen", "--kind", "tp", "--depth", "3", "--branching", "3", "-o", "p_tp.json")
    code, out, _ = run("witness", "roundtrip", "--pattern", "p_tp.json")
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert any(w["levels"] == [1, 2] for w in checks["intended.reflects"]["witnesses"])


def test_witness_roundtrip_positive(run):
    run("pattern", "gen", "--kind", "tp1", "--depth", "3", "-o", "p.json")
    assert run("witness", "roundtrip", "--pattern", "p.json")[0] == 0
    assert run("witness", "roundtrip", "--pattern", "p.json", "--no-padding", "--no-search")[0] == 0


def test_witness_check(run):
    run("witness", "op", "--n", "3", "-o", "sys.json")
    run("sigma", "build", "--op", "3", "-o", "s.json")
    schemas.validate(_json("sys.json"), schemas.SET_SYSTEM)
    code, out, _ = run("witness", "check", "--system", "sys.json", "--sigma", "s.json")
    assert code == 0
    data = json.loads(out)
    assert "embedding" in data and any(c["name"] == "intended.reflects" for c in data["checks"])
    run("sigma", "build", "--ip", "3", "-o", "ip.json")
    assert run("witness", "check", "--system", "sys.json", "--sigma", "ip.json")[0] == 1


def test_witness_pattern_and_sup(run):
    run("pattern", "gen", "--kind", "sop3", "--n", "1", "-o", "p.json")
    assert run("witness", "pattern", "p.json", "--no-padding", "-o", "w.json")[0] == 0
    assert "pad0" not in _json("w.json")["universe"]
    run("sigma", "build", "--pattern", "p.json", "-o", "s.json")
    assert run("witness", "check", "--system", "w.json", "--sigma", "s.json")[0] == 0
    assert run("witness", "sup", "--system", "w.json", "--k", "2")[0] in (0, 1)


def test_embed_and_enumerate(run):
    run("sigma", "build", "--op", "2", "-o", "a.json")
    run("sigma", "build", "--op", "3", "-o", "b.json")
    code, out, _ = run("embed", "a.json", "b.json")
    assert code == 0 and len(json.loads(out)["map"]) == 4
    assert run("embed", "b.json", "a.json")[0] == 1
    code, out, _ = run("enumerate", "--n", "4")
    assert code == 0 and len(json.loads(out)) == 16
    for p in json.loads(out):
        schemas.validate(p, schemas.POSET)
    assert run("enumerate", "--n", "7")[0] == 2


def test_schema_violation_points_at_field(run, tmp_path):
    (tmp_path / "bad.json").write_text(json.dumps({"indices": ["a"], "inconsistent": [["a"]], "consistent": []}))
    code, _, err = run("pattern", "check", "bad.json")
    assert code == 2 and "/inconsistent/0" in err
    (tmp_path / "cyc.json").write_text(json.dumps({"elements": ["a", "b"], "lt": [["a", "b"], ["b", "a"]]}))
    code, _, err = run("export", "dot", "cyc.json")
    assert code == 2 and "cycle" in err
    (tmp_path / "junk.json").write_text("{")
    assert run("export", "dot", "junk.json")[0] == 2
    assert run("export", "dot", "missing.json")[0] == 2
    assert run("pattern", "gen")[0] == 2


def test_degenerate_generator_is_usage_error(run):
    assert run("pattern", "gen", "--kind", "tp2", "--cols", "2")[0] == 2


def test_outputs_are_deterministic(run):
    run("pattern", "gen", "--kind", "atp", "-o", "p.json")
    outs = {run("witness", "roundtrip", "--pattern", "p.json")[1] for _ in range(2)}
    assert len(outs) == 1
    outs = {run("sigma", "build", "--pattern", "p.json", "--audit")[1] for _ in range(2)}
    assert len(outs) == 1


def test_failed_reports_carry_witnesses(run):
    run("pattern", "gen", "--kind", "tp", "--depth", "2", "--branching", "2", "-o", "p.json")
    for argv in (("pattern", "check", "p.json"), ("sigma", "verify", "--pattern", "p.json"),
                 ("witness", "roundtrip", "--pattern", "p.json")):
        code, out, _ = run(*argv)
        assert code == 1
        for c in json.loads(out)["checks"]:
            if c["status"] == "fail":
                assert c["witnesses"]


def test_emitted_json_reparses(run):
    run("pattern", "gen", "--kind", "tp2", "-o", "p.json")
    assert run("pattern", "check", "p.json") == run("pattern", "check", "p.json")
    run("witness", "pattern", "p.json", "-o", "w.json")
    code, out, _ = run("witness", "check", "--system", "w.json", "--sigma", "w.json")
    assert code == 2  # a set system is not a poset
    run("sigma", "build", "--pattern", "p.json", "-o", "s.json")
    run("export", "dot", "s.json", "-o", "s.dot")
    # covers are exactly the generating pairs: 9 transversals x 2 rows, twice, plus 6 pairs both ways
    assert len(parse_dot_edges(open("s.dot", encoding="utf-8").read())) == 2 * 9 * 2 + 2 * 6
