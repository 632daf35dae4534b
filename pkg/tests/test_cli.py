import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import networkx as nx
import numpy as np
import pytest

from hermsrg.cli import RunManifest, main
from hermsrg.graphcore import export_graph6, import_graph6

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv)
    return rc, json.loads(out) if out.strip() else None


@pytest.fixture
def nu34(tmp_path, capsys):
    out = tmp_path / "nu34.g6"
    rc, _ = run_json(capsys, "build", "--n", 2, "--q", 2, "--kind", "nu", "--out", out)
    assert rc == 0
    return out


def test_schemas_are_valid_json_schema():
    for p in SCHEMAS.glob("*.schema.json"):
        jsonschema.Draft202012Validator.check_schema(json.loads(p.read_text()))


def test_build_nu_files_and_sidecar(nu34):
    side = json.loads(nu34.with_suffix(".json").read_text())
    jsonschema.validate(side, schema("sidecar"))
    assert side["srg"] == [12, 9, 6, 9]
    assert side["field"]["p"] == 2 and side["field"]["modulus"] == [1, 1, 1]
    G = import_graph6(nu34.read_bytes())
    assert G.n_vertices == len(side["vertex_points"]) == len(side["point_coords"]) == 12
    man = json.loads((nu34.parent / "nu34.g6.manifest.json").read_text())
    jsonschema.validate(man, schema("manifest"))
    assert set(man["outputs"]) == {"nu34.g6", "nu34.json"}


def test_sidecar_coordinates_decode_to_tangent_graph(nu34):
    # rebuild adjacency from the sidecar alone: points joined by a tangent line
    from hermsrg.projgeom import hermitian_geometry
    side = json.loads(nu34.with_suffix(".json").read_text())
    H = hermitian_geometry(2, 2, np.array(side["geometry"]["gram"]))
    idx = H.space.index(np.array(side["point_coords"]))
    assert idx.tolist() == side["vertex_points"]
    assert np.array_equal(H.tangent_matrix(idx), import_graph6(nu34.read_bytes()).adj)


def test_replay_identical_and_detects_tampering(nu34, capsys):
    man = nu34.parent / "nu34.g6.manifest.json"
    rc, rep = run_json(capsys, "replay", man)
    assert rc == 0 and rep["status"] == "identical"
    m = RunManifest.load(man)
    m.outputs["nu34.g6"] = "0" * 64
    m.write(man)
    rc, rep = run_json(capsys, "replay", man)
    assert rc == 1 and rep["status"] == "differs"


def test_build_gamma_u_and_switched(tmp_path, capsys):
    from hermsrg.constructions import valid_bm_params
    p = valid_bm_params(3)[0]
    out = tmp_path / "bm.g6"
    rc, res = run_json(capsys, "build", "--n", 2, "--q", 3, "--kind", "gamma-u", "--unital", "bm",
                       "--alpha-idx", p.alpha, "--beta-idx", p.beta, "--out", out)
    assert rc == 0 and res["srg"] == [63, 32, 16, 16]
    rc, res = run_json(capsys, "build", "--n", 2, "--q", 3, "--kind", "gamma-u", "--unital", "bm",
                       "--alpha-idx", p.alpha, "--beta-idx", p.beta, "--dual",
                       "--out", tmp_path / "bmd.g6")
    assert rc == 0 and res["srg"] == [63, 32, 16, 16]
    out = tmp_path / "g2.g6"
    rc, res = run_json(capsys, "build", "--n", 4, "--q", 2, "--kind", "switched", "--variant", "line",
                       "--out", out)
    assert rc == 0 and res["srg"] == [176, 135, 102, 108]
    side = json.loads(out.with_suffix(".json").read_text())
    jsonschema.validate(side, schema("sidecar"))
    assert side["construction"]["switching"]["variant"] == "line"
    assert len(side["special_triples"]) >= 1


@pytest.mark.parametrize("argv", [
    ["build", "--n", "2", "--q", "6", "--kind", "nu", "--out", "x.g6"],
    ["build", "--n", "2", "--q", "3", "--kind", "gamma-u", "--unital", "bm", "--out", "x.g6"],
    ["build", "--n", "2", "--q", "3", "--kind", "gamma-u", "--unital", "bm", "--alpha-idx", "0",
     "--beta-idx", "0", "--out", "x.g6"],
    ["build", "--n", "4", "--q", "2", "--kind", "switched", "--out", "x.g6"],
    ["build", "--n", "2", "--q", "2", "--kind", "nu", "--out", "x.txt"],
    ["build", "--n", "2"],
    ["verify", "lemma", "--id", "nope", "--q", "2"],
    ["verify", "lemma", "--q", "2"],
    ["verify", "srg", "--graph", "does-not-exist.g6"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 2
    assert not (tmp_path / "x.g6").exists()


def test_verify_srg(nu34, tmp_path, capsys):
    rc, rep = run_json(capsys, "verify", "srg", "--graph", nu34)
    assert rc == 0 and rep["params"] == [12, 9, 6, 9]
    jsonschema.validate(rep, schema("verify"))
    rc, rep = run_json(capsys, "verify", "srg", "--graph", nu34, "--expect", "12,9,6,8")
    assert rc == 1 and rep["status"] == "fail"
    path = tmp_path / "path.g6"
    path.write_bytes(nx.to_graph6_bytes(nx.path_graph(5), header=False))
    rc, rep = run_json(capsys, "verify", "srg", "--graph", path)
    assert rc == 1 and rep["status"] == "fail" and rep["witness"]["vertices"]
    jsonschema.validate(rep, schema("verify"))


def test_verify_lemma(tmp_path, capsys):
    rc, rep = run_json(capsys, "verify", "lemma", "--id", "hermcurve2", "--q", 3)
    assert rc == 0 and rep["status"] == "pass"
    assert {(c["expected"], c["observed"]) for c in rep["cases"]} == {(15, 15)}
    jsonschema.validate(rep, schema("lemma-report"))
    rc, rep = run_json(capsys, "verify", "lemma", "--id", "hermcurve4", "--q", 3, "--budget", "1e-6")
    assert rc == 3 and rep["status"] == "partial"


def test_verify_lemma_report_replays(tmp_path, capsys):
    out = tmp_path / "lemma.json"
    rc, _ = run_json(capsys, "verify", "lemma", "--id", "tanplane", "--q", 2, "--seed", 3, "--out", out)
    assert rc == 0
    rc, rep = run_json(capsys, "replay", tmp_path / "lemma.json.manifest.json")
    assert rc == 0 and rep["status"] == "identical"


def test_verify_wqh_and_unital(tmp_path, capsys):
    rc, rep = run_json(capsys, "verify", "wqh", "--q", 2, "--variant", "line")
    assert rc == 0 and rep["status"] == "pass"
    assert rep["sizes"]["A1"] == rep["expected_sizes"]["A1"] == 8
    rc, rep = run_json(capsys, "verify", "unital", "--q", 2, "--unital", "classical", "--onan")
    assert rc == 0 and rep["n_tangent"] == 9 and rep["dual_onan"] is None
    bad = tmp_path / "bad.txt"
    bad.write_text("# hermsrg-unital n=2 q=2 kind=junk\n" + "".join(f"{i}\n" for i in range(9)))
    rc, rep = run_json(capsys, "verify", "unital", "--file", bad)
    assert rc == 1 and rep["status"] == "fail" and rep["violation"]
    jsonschema.validate(rep, schema("verify"))


def test_compare_modes(tmp_path, capsys):
    nu54 = tmp_path / "nu54.g6"
    g2 = tmp_path / "g2.g6"
    gp = tmp_path / "gp.g6"
    for out, kind in ((nu54, ["--kind", "nu"]), (g2, ["--kind", "switched", "--variant", "line"]),
                      (gp, ["--kind", "switched", "--variant", "pencil"])):
        assert run(capsys, "build", "--n", 4, "--q", 2, *kind, "--out", out)[0] == 0
    rc, rep = run_json(capsys, "compare", nu54, gp)
    assert rc == 0 and rep["verdict"] == "isomorphic" and rep["identical"]
    rc, rep = run_json(capsys, "compare", nu54, g2, "--mode", "invariants")
    assert rc == 0 and rep["verdict"] == "non-isomorphic"
    assert rep["certificate"]["kind"] == "triple_value"
    jsonschema.validate(rep, schema("compare"))
    # a relabelled copy needs the search
    G = import_graph6(nu54.read_bytes())
    perm = np.random.default_rng(2).permutation(G.n_vertices)
    shuffled = tmp_path / "shuffled.g6"
    shuffled.write_bytes(export_graph6(G.permuted(perm)) + b"\n")
    rc, rep = run_json(capsys, "compare", nu54, shuffled, "--mode", "iso")
    assert rc == 0 and rep["verdict"] == "isomorphic" and len(rep["bijection"]) == 176
    jsonschema.validate(rep, schema("compare"))


def test_census_commands(nu34, tmp_path, capsys):
    rc, rep = run_json(capsys, "census", "--graph", nu34, "--what", "triples")
    assert rc == 0 and rep["exhaustive"] and rep["values"] == [3]
    jsonschema.validate(rep, schema("census"))
    a = run(capsys, "census", "--graph", nu34, "--what", "triples", "--scope", "sample", "--n", 50,
            "--seed", 9)[1]
    b = run(capsys, "census", "--graph", nu34, "--what", "triples", "--scope", "sample", "--n", 50,
            "--seed", 9)[1]
    assert a == b
    rc, rep = run_json(capsys, "census", "--graph", nu34, "--what", "cliques")
    assert rc == 0 and rep["counts"] == {"4": 81} and rep["total"] == 81
    jsonschema.validate(rep, schema("census"))
    G = import_graph6(nu34.read_bytes())
    a_, b_ = (int(x) for x in np.argwhere(np.triu(G.adj))[0])
    c_ = int(np.nonzero(G.adj[a_] & G.adj[b_])[0][0])
    rc, rep = run_json(capsys, "census", "--graph", nu34, "--what", "triples", "--scope", "targeted",
                       "--triples", f"{a_},{b_},{c_}")
    assert rc == 0 and rep["samples"][0][1] == 3
    rc, _ = run_json(capsys, "census", "--graph", nu34, "--what", "triples", "--scope", "targeted",
                     "--triples", "0,0,1")
    assert rc == 2


def test_census_refuses_over_budget(tmp_path, capsys, monkeypatch):
    out = tmp_path / "nu54.g6"
    run(capsys, "build", "--n", 4, "--q", 2, "--kind", "nu", "--out", out)
    monkeypatch.setenv("HERMSRG_BUDGET_SECS", "1e-6")
    rc, out_, err = run(capsys, "census", "--graph", out, "--what", "triples")
    rep = json.loads(out_)
    assert rc == 3 and rep["status"] == "refused" and "refusing" in err
    jsonschema.validate(rep, schema("census"))


def test_threads_flag(nu34, capsys):
    rc, rep = run_json(capsys, "--threads", 1, "census", "--graph", nu34, "--what", "triples")
    assert rc == 0 and rep["counts"] == {"3": 108}
    assert main(["--threads", "0", "census", "--graph", str(nu34), "--what", "triples"]) == 2


def test_module_entry_point(nu34):
    r = subprocess.run([sys.executable, "-m", "hermsrg", "verify", "srg", "--graph", str(nu34)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["params"] == [12, 9, 6, 9]
