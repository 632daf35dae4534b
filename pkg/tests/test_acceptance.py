"""Acceptance criteria 1-10, each test tagged with its criterion number.

Where a stated value cannot be produced (it contradicts the parameter
identity or the exhaustive enumeration), the derivable value is asserted and
the stated one is kept as a strict xfail so that any change is noticed.
"""
import json
import time
from pathlib import Path

import numpy as np
import pytest

from hermsrg.cli import main
from hermsrg.constructions import (build_gamma_u, build_unital_bm, build_unital_bm_alt,
                                   build_unital_bt, build_unital_classical, check_unital,
                                   find_dual_onan, valid_bm_params)
from hermsrg.graphcore import (check_srg, export_graph6, import_graph6, maximal_cliques, nu_params,
                               triple_census)
from hermsrg.oracles import char_values, run_suite, switched_special_value, triangles_by_type
from hermsrg.projgeom import hermitian_geometry
from hermsrg.switching import apply_switch, expected_sizes, special_triples

from conftest import nu, switched

crit = pytest.mark.criterion


def cli(*argv):
    return main([str(a) for a in argv])


# -- 1 ------------------------------------------------------------------------------------

@crit(1)
@pytest.mark.parametrize("n,q,params", [(2, 2, (12, 9, 6, 9)), (2, 3, (63, 32, 16, 16)),
                                        (4, 2, (176, 135, 102, 108))])
def test_c1_srg_parameters(n, q, params):
    assert check_srg(nu(n, q)).as_tuple() == params


@crit(1)
def test_c1_nu59_parameters():
    t = time.perf_counter()
    p = check_srg(nu(4, 3))
    assert p.as_tuple() == (4941, 2240, 1024, 1008) == nu_params(4, 3).as_tuple()
    assert p.feasible()
    assert time.perf_counter() - t < 600


@crit(1)
@pytest.mark.xfail(strict=True, reason="mu=1080 violates k(k-lambda-1) = (v-k-1)mu; the formula gives 1008")
def test_c1_nu59_literal_mu():
    assert check_srg(nu(4, 3)).mu == 1080


# -- 2 ------------------------------------------------------------------------------------

@crit(2)
@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("variant", ["pencil", "line"])
def test_c2_switching_set_sizes(q, variant):
    s = switched(4, q, variant).sets.sizes()
    assert {k: s[k] for k in ("A", "A1", "A2")} == expected_sizes(q, variant)
    if (q, variant) == (2, "pencil"):
        assert s["A1"] == s["A2"] == 0


# -- 3 ------------------------------------------------------------------------------------

@crit(3)
@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("variant", ["pencil", "line"])
def test_c3_cospectral_mates(q, variant):
    b = switched(4, q, variant)
    assert check_srg(b.switched) == check_srg(b.base) == nu_params(4, q)
    back = apply_switch(b.switched, b.config, b.sets)
    assert np.array_equal(back.bits, b.base.bits)


# -- 4 ------------------------------------------------------------------------------------

@crit(4)
def test_c4_full_census_nu54():
    t = time.perf_counter()
    c = triple_census(nu(4, 2))
    assert c.exhaustive and set(c.counts) == {69, 75, 77}
    assert time.perf_counter() - t < 60


@crit(4)
@pytest.mark.xfail(strict=True, reason="37 needs T on the Baer subline of a tangent-line triple, "
                                        "impossible at q=2 (4 points off H per tangent line)")
def test_c4_full_census_nu54_literal():
    assert set(triple_census(nu(4, 2)).counts) == {37, 69, 75, 77}


@crit(4)
def test_c4_targeted_triples_q3():
    H = hermitian_geometry(4, 3)
    G = nu(4, 3)
    seen = {}
    for kind, found in triangles_by_type(H, per_type=4, seed=0).items():
        assert found, kind
        verts = G.vertices_of_labels(np.array(found).ravel()).reshape(-1, 3)
        vals = {v for _, v in triple_census(G, [tuple(map(int, x)) for x in verts]).samples}
        seen[kind] = vals
    assert seen == {k: {v} for k, v in char_values(3).items()}
    assert {v for s in seen.values() for v in s} == {294, 537, 483, 462}


@crit(4)
@pytest.mark.parametrize("q,value", [(2, 69), (3, 510)])
def test_c4_special_triple_in_line_switch(q, value):
    b = switched(4, q, "line")
    tri = special_triples(b.base, b.config, b.sets, limit=3)
    assert tri
    vals = {v for _, v in triple_census(b.switched, [t.triple for t in tri]).samples}
    assert vals == {value} == {switched_special_value(q)}


# -- 5 ------------------------------------------------------------------------------------

@pytest.fixture(scope="module")
def q3_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("q3")
    for name, extra in (("nu59", ["--kind", "nu"]),
                        ("gp", ["--kind", "switched", "--variant", "pencil"]),
                        ("gpp", ["--kind", "switched", "--variant", "line"])):
        assert cli("build", "--n", 4, "--q", 3, *extra, "--out", d / f"{name}.g6") == 0
    return d


@crit(5)
@pytest.mark.parametrize("other", ["gp", "gpp"])
def test_c5_nu59_vs_switched_q3(q3_files, other, capsys):
    out = q3_files / f"cmp-{other}.json"
    t = time.perf_counter()
    rc = cli("compare", q3_files / "nu59.g6", q3_files / f"{other}.g6", "--mode", "invariants",
             "--out", out)
    assert rc == 0 and time.perf_counter() - t < 300
    rep = json.loads(out.read_text())
    c = rep["certificate"]
    assert rep["verdict"] == "non-isomorphic"
    assert c["kind"] == "triple_value" and c["value"] == 510 and c["holder"] == 2
    assert set(c["details"]["other_values"]) == {294, 462, 483, 537}
    # the witness re-checks directly on the switched graph
    G2 = import_graph6((q3_files / f"{other}.g6").read_bytes())
    assert triple_census(G2, [tuple(c["witness"])]).samples[0][1] == 510


@crit(5)
def test_c5_nu39_vs_bm_by_cliques(tmp_path):
    p = valid_bm_params(3)[0]
    assert cli("build", "--n", 2, "--q", 3, "--kind", "nu", "--out", tmp_path / "nu39.g6") == 0
    assert cli("build", "--n", 2, "--q", 3, "--kind", "gamma-u", "--unital", "bm",
               "--alpha-idx", p.alpha, "--beta-idx", p.beta, "--out", tmp_path / "bm.g6") == 0
    t = time.perf_counter()
    rc = cli("compare", tmp_path / "nu39.g6", tmp_path / "bm.g6", "--mode", "invariants",
             "--methods", "cliques", "--out", tmp_path / "cmp.json")
    assert rc == 0 and time.perf_counter() - t < 600
    rep = json.loads((tmp_path / "cmp.json").read_text())
    assert rep["verdict"] == "non-isomorphic"
    assert rep["certificate"]["kind"] == "clique_frequencies"
    nu_counts, bm_counts = rep["certificate"]["details"]["counts"]
    assert nu_counts == {"5": 1512, "9": 28} and bm_counts["9"] == 28 and bm_counts["5"] > 1512


# -- 6 ------------------------------------------------------------------------------------

@crit(6)
def test_c6_q2_line_switch_iso(tmp_path):
    for name, extra in (("nu54", ["--kind", "nu"]), ("gpp", ["--kind", "switched", "--variant", "line"])):
        assert cli("build", "--n", 4, "--q", 2, *extra, "--out", tmp_path / f"{name}.g6") == 0
    t = time.perf_counter()
    rc = cli("compare", tmp_path / "nu54.g6", tmp_path / "gpp.g6", "--mode", "iso",
             "--budget", 1800, "--out", tmp_path / "cmp.json")
    assert rc == 0 and time.perf_counter() - t < 1800
    rep = json.loads((tmp_path / "cmp.json").read_text())
    assert rep["verdict"] == "non-isomorphic"
    assert rep["certificate"]["kind"] == "triple_census"
    a, b = rep["certificate"]["values"]
    assert set(b) - set(a)


# -- 7 ------------------------------------------------------------------------------------

@crit(7)
def test_c7_lemma_suite():
    t = time.perf_counter()
    m = run_suite(seed=0)
    assert time.perf_counter() - t < 1800
    bad = [(r["lemma"], r["q"], r["status"]) for r in m["reports"] if r["status"] != "pass"]
    assert not bad
    assert m["status"] == "pass"
    got = {(r["lemma"], r["q"]) for r in m["reports"]}
    assert {("char", 3), ("char_new", 3), ("hermcurve5", 5), ("sets12", 2)} <= got


# -- 8 ------------------------------------------------------------------------------------

@crit(8)
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_c8_classical_unitals(q):
    rep = check_unital(build_unital_classical(q))
    assert (rep.n_points, rep.n_tangent, rep.n_secant) == (q**3 + 1, q**3 + 1, q**4 - q**3 + q * q)


@crit(8)
@pytest.mark.parametrize("q", [3, 5])
def test_c8_bm_unitals(q):
    pairs = valid_bm_params(q)
    if len(pairs) > 20:
        rng = np.random.default_rng(0)
        pairs = [pairs[i] for i in sorted(rng.choice(len(pairs), 20, replace=False))]
    for p in pairs:
        for build in (build_unital_bm, build_unital_bm_alt):
            rep = check_unital(build(q, p))
            assert (rep.n_tangent, rep.n_secant) == (q**3 + 1, q**4 - q**3 + q * q)


@crit(8)
@pytest.mark.slow
def test_c8_bt_unital_q8():
    t = time.perf_counter()
    rep = check_unital(build_unital_bt(8))
    assert (rep.n_points, rep.n_tangent, rep.n_secant) == (513, 513, 3648)
    assert time.perf_counter() - t < 3600


@crit(8)
@pytest.mark.parametrize("q", [2, 3])
def test_c8_classical_has_no_dual_onan(q):
    assert find_dual_onan(build_unital_classical(q)) is None


@crit(8)
def test_c8_bm_has_dual_onan():
    for p in valid_bm_params(3):
        assert find_dual_onan(build_unital_bm(3, p)) is not None


# -- 9 ------------------------------------------------------------------------------------

@crit(9)
def test_c9_clique_census_nu39():
    q = 3
    c = maximal_cliques(nu(2, q))
    assert c.counts == {9: 28, 5: 1512}
    assert c.counts[q * q] == q**3 + 1 and c.counts[q + 2] == q**3 * (q - 1) * (q**3 + 1)


@crit(9)
@pytest.mark.xfail(strict=True, reason="exhaustive search finds 1512 maximal 5-cliques; 1764 overcounts")
def test_c9_clique_census_literal():
    assert maximal_cliques(nu(2, 3)).counts == {9: 28, 5: 1764}


# -- 10 -----------------------------------------------------------------------------------

@crit(10)
def test_c10_graph6_roundtrip_all_built_graphs():
    graphs = [nu(2, 2), nu(2, 3), nu(3, 2), nu(4, 2), nu(4, 3),
              switched(4, 2, "line").switched, switched(4, 3, "line").switched,
              switched(4, 3, "pencil").switched,
              build_gamma_u(build_unital_bm(3, valid_bm_params(3)[0])),
              build_gamma_u(build_unital_classical(5))]
    for G in graphs:
        data = export_graph6(G)
        H = import_graph6(data)
        assert np.array_equal(H.bits, G.bits)
        assert export_graph6(H) == data


@crit(10)
def test_c10_manifests_replay(tmp_path, capsys):
    p = valid_bm_params(3)[0]
    runs = [
        ["build", "--n", 4, "--q", 2, "--kind", "switched", "--variant", "line", "--out", tmp_path / "a.g6"],
        ["build", "--n", 2, "--q", 3, "--kind", "gamma-u", "--unital", "bm", "--alpha-idx", p.alpha,
         "--beta-idx", p.beta, "--out", tmp_path / "b.g6"],
        ["build", "--n", 3, "--q", 2, "--kind", "nu", "--gram-seed", 11, "--out", tmp_path / "c.g6"],
    ]
    for argv in runs:
        assert cli(*argv) == 0
    assert cli("census", "--graph", tmp_path / "a.g6", "--what", "triples", "--scope", "sample",
               "--n", 200, "--seed", 5, "--out", tmp_path / "s.json") == 0
    capsys.readouterr()
    for man in sorted(Path(tmp_path).glob("*.manifest.json")):
        assert cli("replay", man) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["status"] == "identical" and all(o["identical"] for o in rep["outputs"].values())
