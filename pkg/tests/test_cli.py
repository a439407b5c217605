import json

import pytest

from endoforge import algebra
from endoforge.cli import main
from endoforge.graphs import digraph_to_json, graph_from_json, load_any_graph
from conftest import make_digraph


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture()
def chain2_monoid(tmp_path):
    m = algebra.chain_lattice(2).meet_monoid()
    return write_json(tmp_path / "chain2.json", algebra.monoid_to_json(m))


@pytest.fixture()
def cycle3_digraph(tmp_path):
    d = make_digraph(3, [(0, 1), (1, 2), (2, 0)])
    return write_json(tmp_path / "c3.json", digraph_to_json(d))


def test_monoid_validate_and_predicates(capsys, chain2_monoid):
    assert main(["monoid", "validate", "--in", chain2_monoid]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["valid"] and out["size"] == 2
    assert main(["monoid", "predicates", "--in", chain2_monoid]) == 0
    preds = json.loads(capsys.readouterr().out)
    assert preds["commutative"] and preds["idempotent"]


def test_monoid_gens(capsys, chain2_monoid):
    # the chain's meet monoid has identity at the top; the bottom generates
    assert main(["monoid", "gens", "--in", chain2_monoid]) == 0
    assert json.loads(capsys.readouterr().out)["minimal_generating_set"] == [0]


def test_monoid_bp(capsys, tmp_path):
    out = tmp_path / "bp2.json"
    assert main(["monoid", "bp", "--p", "2", "--out", str(out)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["size"] == 18
    m = algebra.load_monoid(out)
    assert m.size == 18


def test_monoid_invalid_table_exit1(tmp_path, capsys):
    path = write_json(tmp_path / "bad.json",
                      {"size": 3, "identity": 0,
                       "table": [[0, 1, 2], [1, 0, 0], [2, 0, 1]]})
    assert main(["monoid", "validate", "--in", path]) == 1
    capsys.readouterr()


def test_malformed_input_exit2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["monoid", "validate", "--in", str(bad)]) == 2
    missing = tmp_path / "missing.json"
    assert main(["endo", "--in", str(missing)]) == 2
    capsys.readouterr()


def test_build_pipeline_chain2(tmp_path, capsys, chain2_monoid):
    out = tmp_path / "g.json"
    assert main(["build", "pipeline", "--in", chain2_monoid,
                 "--out", str(out)]) == 0
    report = json.loads(capsys.readouterr().out)
    stages = {s["stage"]: s for s in report["stages"]}
    assert set(stages) == {"encode", "blowup", "sip"}
    g = load_any_graph(out)
    assert g.max_degree() <= 3


def test_build_outputs_are_reproducible(tmp_path, capsys, chain2_monoid):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["build", "encode", "--in", chain2_monoid, "--out", str(a)])
    capsys.readouterr()
    main(["build", "encode", "--in", chain2_monoid, "--out", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_build_cayley_and_sip_gate(tmp_path, capsys):
    m = algebra.cyclic_group(3)
    mpath = write_json(tmp_path / "z3.json", algebra.monoid_to_json(m))
    cay = tmp_path / "cay.json"
    assert main(["build", "cayley", "--in", mpath, "--out", str(cay)]) == 0
    capsys.readouterr()
    # the raw Cayley graph has loops nowhere but min in/out 1: product works
    assert main(["build", "sip", "--in", str(cay), "--out",
                 str(tmp_path / "s.json")]) == 0
    capsys.readouterr()
    # a looped input must be rejected with the hypothesis named
    loopy = write_json(
        tmp_path / "loopy.json",
        digraph_to_json(make_digraph(2, [(0, 0), (0, 1), (1, 0)])),
    )
    code = main(["build", "sip", "--in", loopy])
    err = capsys.readouterr().err
    assert code == 1
    assert "loopless" in err


def test_endo_command(capsys, cycle3_digraph):
    assert main(["endo", "--in", cycle3_digraph, "--maps", "--table"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["count"] == 3
    assert [0, 1, 2] in out["maps"]
    assert out["monoid"]["size"] == 3


def test_endo_budget_env(monkeypatch, capsys, cycle3_digraph):
    monkeypatch.setenv("ENDOFORGE_NODE_BUDGET", "2")
    assert main(["endo", "--in", cycle3_digraph]) == 1
    capsys.readouterr()


def test_verify_gadget(capsys):
    assert main(["verify", "gadget", "--k", "1"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_verify_encoding(capsys, chain2_monoid):
    assert main(["verify", "encoding", "--lattice", chain2_monoid]) == 0
    capsys.readouterr()


def test_verify_blowup_and_pipeline(capsys, tmp_path, cycle3_digraph):
    assert main(["verify", "blowup", "--in", cycle3_digraph]) == 0
    capsys.readouterr()
    triv = write_json(tmp_path / "triv.json",
                      algebra.monoid_to_json(algebra.validate_monoid([[0]], 0)))
    assert main(["verify", "pipeline", "--in", triv]) == 0
    capsys.readouterr()


def test_verify_bp_monoid(capsys):
    assert main(["verify", "bp-monoid", "--p", "2"]) == 0
    capsys.readouterr()


def test_witness_and_verify_minor(tmp_path, capsys):
    model = tmp_path / "model.json"
    host = tmp_path / "host.json"
    assert main(["witness", "minor", "--poset", "bn:2", "--out", str(model),
                 "--host-out", str(host)]) == 0
    capsys.readouterr()
    assert main(["verify", "minor", "--model", str(model),
                 "--host", str(host)]) == 0
    capsys.readouterr()
    # tamper: make two branch sets overlap
    obj = json.loads(model.read_text())
    obj["branch_sets"][0] = obj["branch_sets"][0] + obj["branch_sets"][1][:1]
    bad = write_json(tmp_path / "bad_model.json", obj)
    code = main(["verify", "minor", "--model", bad, "--host", str(host)])
    out = capsys.readouterr().out
    assert code == 1 and "FAIL" in out


def test_verify_minor_from_poset(capsys):
    assert main(["verify", "minor", "--poset", "bn:2"]) == 0
    out = capsys.readouterr().out
    assert "PASS minor witness certified" in out


def test_verify_minor_without_thickness(tmp_path, capsys):
    # a chain poset is not thick; the flag runs the extraction regardless
    chain3 = algebra.chain_lattice(3).poset
    path = write_json(tmp_path / "chain3.json", algebra.poset_to_json(chain3))
    assert main(["verify", "minor", "--poset", path]) == 1
    capsys.readouterr()
    assert main(["verify", "minor", "--poset", path, "--no-thick-check"]) == 0
    capsys.readouterr()


def test_verify_sip(tmp_path, capsys):
    d = write_json(tmp_path / "d.json",
                   digraph_to_json(make_digraph(2, [(0, 1)], [(1, 0)])))
    assert main(["verify", "sip", "--in", d, "--jobs", "2"]) == 0
    capsys.readouterr()


def test_endo_jobs(capsys, cycle3_digraph):
    assert main(["endo", "--in", cycle3_digraph, "--jobs", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 3


def test_build_augment_and_blowup(tmp_path, capsys):
    m = algebra.cyclic_group(2)
    mpath = write_json(tmp_path / "z2.json", algebra.monoid_to_json(m))
    aug = tmp_path / "aug.json"
    assert main(["build", "augment", "--in", mpath, "--out", str(aug)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["stages"][0]["vertices"] == 6
    blo = tmp_path / "blo.json"
    assert main(["build", "blowup", "--in", str(aug), "--out", str(blo)]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert rec["stages"][0]["min_out"] == 1 and rec["stages"][0]["min_in"] == 1


def test_pipeline_verify_flag(tmp_path, capsys):
    triv = write_json(tmp_path / "triv.json",
                      algebra.monoid_to_json(algebra.validate_monoid([[0]], 0)))
    assert main(["build", "pipeline", "--in", triv, "--verify",
                 "--jobs", "2"]) == 0
    rec = json.loads(capsys.readouterr().out)
    sip_stage = next(s for s in rec["stages"] if s["stage"] == "sip")
    assert sip_stage["end_size"] == 1 and sip_stage["end_is_input_monoid"]


def test_pipeline_verify_reports_budget_skip(tmp_path, capsys, chain2_monoid):
    # a tiny budget cannot finish any enumeration; the report must say so
    assert main(["build", "pipeline", "--in", chain2_monoid, "--verify",
                 "--budget", "3"]) == 0
    rec = json.loads(capsys.readouterr().out)
    for stage in rec["stages"]:
        assert "end_size" not in stage
        assert "end_size_skipped" in stage


def test_bench_smoke(capsys):
    assert main(["bench", "--size", "small"]) == 0
    out = capsys.readouterr().out
    assert "results identical across backends" in out


def test_export_dot(tmp_path, capsys, cycle3_digraph):
    out = tmp_path / "g.dot"
    assert main(["export", "dot", "--in", cycle3_digraph, "--out", str(out)]) == 0
    assert "->" in out.read_text()
    # without --out the DOT text goes to stdout
    assert main(["export", "dot", "--in", cycle3_digraph]) == 0
    assert "->" in capsys.readouterr().out


def test_sip_k_too_small_exit1(tmp_path, capsys):
    d = write_json(tmp_path / "d.json",
                   digraph_to_json(make_digraph(2, [(0, 1), (1, 0)])))
    assert main(["build", "sip", "--in", d, "--k", "1"]) == 1
    capsys.readouterr()
