from itertools import combinations

import numpy as np
import pytest

from hermsrg.constructions import (BMParams, UnitalError, bm_param_violation, build_gamma_u,
                                   build_nu, build_unital_bm, build_unital_bm_alt, build_unital_bt,
                                   build_unital_classical, check_dual_onan, check_unital,
                                   dual_unital, find_dual_onan, find_onan, read_unital,
                                   valid_bm_params, validate_unital, write_unital)
from hermsrg.graphcore import check_srg, gamma_u_params, is_isomorphic, maximal_cliques

from conftest import nu


def incidence_profile(U):
    """(tangents, secants) through each unital point and each external point."""
    S = U.space
    inc = S.incidence
    tan = U.line_counts == 1
    sec = U.line_counts == U.q + 1
    on = {(int(inc[tan, p].sum()), int(inc[sec, p].sum())) for p in U.points}
    off = {(int(inc[tan, p].sum()), int(inc[sec, p].sum())) for p in U.external_points}
    return on, off


def test_build_nu_rejects_bad_sizes():
    with pytest.raises(ValueError):
        build_nu(1, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_classical_unital(q):
    U = build_unital_classical(q)
    rep = check_unital(U)
    assert rep.ok and len(U) == q**3 + 1
    assert (rep.n_tangent, rep.n_secant) == (q**3 + 1, q**4 - q**3 + q**2)
    on, off = incidence_profile(U)
    assert on == {(1, q * q)} and off == {(q + 1, q * q - q)}


@pytest.mark.parametrize("q", [3, 5])
def test_bm_unitals_all_valid_pairs(q):
    pairs = valid_bm_params(q)
    assert pairs and all(p.alpha != 0 for p in pairs)
    for p in pairs[:20]:
        for build in (build_unital_bm, build_unital_bm_alt):
            U = build(q, p)
            assert len(U) == q**3 + 1
            rep = check_unital(U)
            assert rep.ok and (rep.n_tangent, rep.n_secant) == (q**3 + 1, q**4 - q**3 + q**2)
            on, off = incidence_profile(U)
            assert on == {(1, q * q)} and off == {(q + 1, q * q - q)}


def test_bm_parameter_errors():
    assert bm_param_violation(3, 0, 0) is not None
    with pytest.raises(UnitalError, match="non-square"):
        build_unital_bm(3, BMParams(0, 0))
    with pytest.raises(UnitalError):
        build_unital_bm(2, BMParams(1, 2))
    with pytest.raises(UnitalError):
        build_unital_bt(4)


def test_bm_alpha_zero_is_classical():
    U = build_unital_bm(3, valid_bm_params(3, classical=True)[0])
    G = build_gamma_u(U)
    assert is_isomorphic(G, nu(2, 3), timeout=120).isomorphic
    assert find_dual_onan(U) is None


def test_validate_unital_random_set_fails():
    U = build_unital_classical(3)
    rng = np.random.default_rng(0)
    pts = rng.choice(U.space.n_points, 28, replace=False)
    rep = validate_unital(pts, U.space, 3)
    assert not rep.ok
    line, count = rep.violation["line"], rep.violation["count"]
    assert count not in (1, 4)
    assert int(U.space.incidence[line][pts].sum()) == count
    short = validate_unital(pts[:10], U.space, 3)
    assert not short.ok and short.violation == {"reason": "size", "count": 10}


@pytest.mark.parametrize("q", [2, 3])
def test_gamma_classical_is_nu(q):
    G = build_gamma_u(build_unital_classical(q))
    assert check_srg(G) == gamma_u_params(q)
    assert is_isomorphic(G, nu(2, q), timeout=120).isomorphic


def test_gamma_bm_params_and_labels():
    U = build_unital_bm(3, valid_bm_params(3)[0])
    G = build_gamma_u(U)
    assert check_srg(G).as_tuple() == (63, 32, 16, 16)
    assert np.array_equal(G.labels, U.external_points)


def test_dual_unitals():
    U = build_unital_classical(2)
    D = dual_unital(U)
    assert len(D) == 9 and check_unital(D).ok
    for p in valid_bm_params(3)[:3]:
        U = build_unital_bm(3, p)
        D = dual_unital(U)
        assert check_unital(D).ok
        assert check_srg(build_gamma_u(D)).as_tuple() == (63, 32, 16, 16)
        assert dual_unital(D).same_points(U)


@pytest.mark.parametrize("q", [2, 3])
def test_classical_has_no_onan(q):
    U = build_unital_classical(q)
    assert find_dual_onan(U) is None
    assert find_onan(U) is None


def test_bm_dual_onan_witness():
    for build in (build_unital_bm, build_unital_bm_alt):
        U = build(3, valid_bm_params(3)[0])
        cfg = find_dual_onan(U)
        assert cfg is not None and cfg.route in ("seed", "exhaustive")
        assert check_dual_onan(U, cfg.points)
        assert all(U.line_counts[L] == 1 for L in cfg.lines)
    # a seeded witness in the alternative frame re-checks too
    routes = {find_dual_onan(build_unital_bm_alt(3, p)).route for p in valid_bm_params(3)}
    assert "seed" in routes


def test_primal_onan_in_bm():
    U = build_unital_bm(3, valid_bm_params(3)[0])
    cfg = find_onan(U)
    assert cfg is not None and cfg.form == "primal"
    assert len(set(cfg.points)) == 6 and U.mask[list(cfg.points)].all()
    S = U.space
    # every meeting point lies on exactly two of the four lines
    on = S.incidence[list(cfg.lines)][:, list(cfg.points)]
    assert (on.sum(axis=0) == 2).all()


def test_bm_gamma_has_clique_with_four_points_no_three_collinear():
    U = build_unital_bm(3, valid_bm_params(3)[0])
    G = build_gamma_u(U)
    S = U.space
    c = maximal_cliques(G, collect=True)
    assert c.counts[9] == 28 and c.counts[5] > 1512

    def general(quad):
        return not any(S.incidence[int(S.join(a, b)[0]), c] for a, b, c in combinations(quad, 3))

    hits = [w for w in c.witnesses[5]
            if any(general(quad) for quad in combinations(G.labels[list(w)].tolist(), 4))]
    assert hits


def test_unital_text_roundtrip(tmp_path):
    U = build_unital_bm(3, valid_bm_params(3)[1])
    path = tmp_path / "u.txt"
    write_unital(U, path)
    V = read_unital(path)
    assert V.same_points(U) and V.kind == U.kind and V.params == U.params
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n2\n")
    with pytest.raises(UnitalError):
        read_unital(bad)


@pytest.mark.slow
def test_bt_unital_q8():
    U = build_unital_bt(8)
    rep = check_unital(U)
    assert rep.ok and len(U) == 513 and (rep.n_tangent, rep.n_secant) == (513, 3648)
    assert check_srg(build_gamma_u(U)).as_tuple() == (3648, 567, 126, 81)
