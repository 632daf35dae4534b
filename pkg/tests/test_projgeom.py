from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermsrg.projgeom import (GeometryError, LineType, PlaneSection, Subspace, baer_subline,
                              baer_sublines_of_line, enumerate_points, hermitian_geometry,
                              hermitian_pencils_of_plane, hermitian_point_count, paper_gram,
                              projective_space, random_frame_gram)


def whole_plane(S):
    return Subspace(S.field, np.eye(3, dtype=np.int64))


@pytest.mark.parametrize("n,q,count", [(2, 2, 21), (4, 2, 341), (2, 3, 91), (3, 3, 820)])
def test_point_counts_and_order(n, q, count):
    pts = enumerate_points(n, q)
    assert len(pts) == count
    keys = [p.coords for p in pts]
    assert keys == sorted(keys)
    assert all(next(c for c in k if c) == 1 for k in keys)


@pytest.mark.parametrize("n,q,size", [(2, 2, 9), (4, 2, 165), (3, 3, 280), (2, 5, 126), (3, 2, 45)])
def test_hermitian_point_counts(n, q, size):
    H = hermitian_geometry(n, q)
    assert len(H.point_set) == size == hermitian_point_count(n, q)


def test_hermitian_count_exhaustive_isotropy():
    # recount h(x, x) = 0 from scratch over all normalised vectors of PG(3, 9)
    H = hermitian_geometry(3, 3)
    F = H.field
    conj = F.power_map(3)
    X = H.space.coords
    acc = np.zeros(len(X), dtype=np.int64)
    for i in range(4):
        acc = F.add_table[acc, F.mul_table[X[:, i], conj[X[:, i]]]]
    assert int(np.sum(acc == 0)) == (3**4 - 1) * (3**3 + 1) // (3**2 - 1) == 280


def test_rejects_bad_gram():
    F = projective_space(2, 2).field
    with pytest.raises(ValueError):
        hermitian_geometry(2, 2, np.zeros((3, 3), dtype=np.int64))
    g = np.eye(3, dtype=np.int64)
    g[0, 1] = 2  # not conjugate-symmetric
    with pytest.raises(ValueError):
        hermitian_geometry(2, 2, g)
    assert F.order == 4


def lines_of_plane(S):
    return [S.line(int(a), int(b)) for a, b in _line_reps(S)]


def _line_reps(S):
    seen, out = set(), []
    for L in range(S.n_points):
        pts = tuple(np.nonzero(S.incidence[L])[0][:2])
        if pts not in seen:
            seen.add(pts)
            out.append(pts)
    return out


@pytest.mark.parametrize("q", [2, 3])
def test_plane_line_classes(q):
    H = hermitian_geometry(2, q, paper_gram(q))
    types = [H.classify_line(L) for L in lines_of_plane(H.space)]
    assert types.count(LineType.TANGENT) == q**3 + 1
    assert types.count(LineType.SECANT) == q**4 - q**3 + q**2
    assert LineType.GENERATOR not in types


def test_generator_line_in_space():
    H = hermitian_geometry(4, 2)
    P = int(H.point_set[0])
    on = [int(x) for x in H.point_set[1:] if H.h(P, x)[0, 0] == 0]
    L = H.space.line(P, on[0])
    assert H.classify_line(L) is LineType.GENERATOR
    assert set(H.space.points_of(L)) <= set(H.point_set.tolist())


def test_tangent_lines_through_off_point_pg4_q2():
    H = hermitian_geometry(4, 2)
    R = int(H.non_absolute[0])
    feet = H.tangent_set(R, H.point_set)
    # each tangent line through R carries exactly one point of H
    assert len(feet) == 45 == len(H.intersection(H.polar_of_point(R)))


def test_polar_involution_and_dimension():
    H = hermitian_geometry(4, 2)
    S = H.space
    for i in range(0, S.n_points, 17):
        P = S.span([i])
        pol = H.polar(P)
        assert pol.dim == 3
        assert H.polar(pol) == P
        assert S.contains(pol, i)[0] == bool(H.absolute[i])
    L = S.line(0, 1)
    assert H.polar(L).dim == 2 and H.polar(H.polar(L)) == L


def test_tangent_hyperplane_is_union_of_generators():
    H = hermitian_geometry(4, 2)
    S = H.space
    P = int(H.point_set[0])
    cone = set(H.intersection(H.polar_of_point(P)).tolist())
    gens, covered = set(), {P}
    for x in cone - {P}:
        L = S.line(P, x)
        if H.classify_line(L) is LineType.GENERATOR:
            gens.add(L)
            covered |= set(S.points_of(L).tolist())
    assert covered == cone
    assert len(gens) == 2**3 + 1


def test_secant_plane_polar_line():
    H = hermitian_geometry(4, 2)
    S = H.space
    rng = np.random.default_rng(1)
    seen = 0
    while seen < 5:
        a, b, c = (int(x) for x in rng.choice(S.n_points, 3, replace=False))
        plane = S.span([a, b, c])
        if plane.dim != 2 or H.classify_plane_section(plane) is not PlaneSection.HERMITIAN_CURVE:
            continue
        seen += 1
        assert len(H.intersection(H.polar(plane))) == 3


def test_plane_section_census_pg4_q2():
    H = hermitian_geometry(4, 2)
    S = H.space
    bases = S.subspace_bases(3)
    pts = S.points_of_bases(bases)
    sizes = H.absolute[pts].sum(axis=1)
    assert set(sizes.tolist()) == {5, 9, 13}
    assert len(bases) == (4**5 - 1) * (4**4 - 1) // ((4**2 - 1) * (4 - 1))


def test_pencil_plane_from_two_tangent_lines():
    H = hermitian_geometry(4, 2)
    S = H.space
    P = int(H.point_set[0])
    lines = []
    for x in range(S.n_points):
        if x != P and not H.absolute[x]:
            L = S.line(P, x)
            if H.classify_line(L) is LineType.TANGENT and L not in lines:
                lines.append(L)
    kinds = {H.classify_plane_section(S.span([a, b])) for a, b in combinations(lines[:12], 2)}
    assert kinds <= {PlaneSection.PENCIL, PlaneSection.LINE}
    assert PlaneSection.PENCIL in kinds


def test_baer_subline_small_q():
    S = projective_space(1, 2)
    assert baer_subline(S, 2, 0, 1, 2).points == frozenset({0, 1, 2})
    S3 = projective_space(1, 3)
    outs = {baer_subline(S3, 3, *p).points for p in permutations((0, 4, 7))}
    assert len(outs) == 1
    (s,) = outs
    assert len(s) == 4 and {0, 4, 7} <= s


def test_baer_sublines_partition_triples_pg1_9():
    S = projective_space(2, 3)
    L = S.line(0, 1)
    subs = baer_sublines_of_line(S, 3, L)
    assert len(subs) == 30
    pts = S.points_of(L).tolist()
    for t in combinations(pts, 3):
        assert sum(set(t) <= s for s in subs) == 1


def test_baer_subline_rejects_bad_input():
    S = projective_space(2, 2)
    with pytest.raises(ValueError):
        baer_subline(S, 2, 0, 0, 1)
    # three non-collinear points
    with pytest.raises(ValueError):
        baer_subline(S, 2, 0, 1, int(S.index(np.array([[0, 0, 1]]))[0]))


@given(st.integers(0, 10**6))
def test_baer_subline_closure(seed):
    q = 3
    S = projective_space(2, q)
    rng = np.random.default_rng(seed)
    a, b = (int(x) for x in rng.choice(S.n_points, 2, replace=False))
    pts = S.points_of(S.line(a, b))
    c = int(rng.choice(pts[(pts != a) & (pts != b)]))
    s = baer_subline(S, q, a, b, c).points
    for t in combinations(sorted(s), 3):
        assert baer_subline(S, q, *t).points == s


@pytest.mark.parametrize("q", [2, 3])
def test_pencils_of_plane(q):
    S = projective_space(2, q)
    fam = hermitian_pencils_of_plane(S, q, whole_plane(S))
    sets = fam.point_sets()
    assert all(len(x) == q**3 + q**2 + 1 for x in sets)
    assert len(set(fam.keys())) == len(fam)
    L = S.points_of(S.line(0, 1))
    assert len(fam.meeting(L, 1)) == q * q * (q - 1) * (q * q + 1)


def test_pencils_through_three_points_meeting_line_once():
    q = 3
    H = hermitian_geometry(2, q)
    S = H.space
    L = S.points_of(S.line(0, 1))
    off = [int(x) for x in range(S.n_points) if x not in set(L.tolist())]
    rng = np.random.default_rng(0)
    for _ in range(3):
        while True:
            tri = [int(x) for x in rng.choice(off, 3, replace=False)]
            if S.span(tri).dim == 2:
                break
        fam = hermitian_pencils_of_plane(S, q, whole_plane(S), contains=tri, meets=[(L, 1)])
        assert len(fam) == q * q + 2 * q


@given(st.sampled_from([(2, 2), (2, 3), (3, 2)]), st.integers(0, 1000))
def test_random_frame_same_counts(nq, seed):
    n, q = nq
    H = hermitian_geometry(n, q, random_frame_gram(n, q, seed))
    assert len(H.point_set) == hermitian_point_count(n, q)


@pytest.mark.parametrize("n,q", [(2, 2), (3, 2), (2, 3)])
def test_line_type_distribution_constant_on_orbits(n, q):
    H = hermitian_geometry(n, q)
    S = H.space

    def profile(P):
        seen, kinds = set(), []
        for x in range(S.n_points):
            if x == P:
                continue
            L = S.line(P, x)
            if L in seen:
                continue
            seen.add(L)
            kinds.append(H.classify_line(L).value)
        return sorted(kinds)

    on = {tuple(profile(int(P))) for P in H.point_set[:4]}
    off = {tuple(profile(int(P))) for P in H.non_absolute[:4]}
    assert len(on) == 1 and len(off) == 1
    # through R off H: the tangent lines are exactly |polar(R) & H| many
    R = int(H.non_absolute[0])
    assert list(off)[0].count("tangent") == len(H.intersection(H.polar_of_point(R)))


def test_geometry_error_type():
    assert issubclass(GeometryError, RuntimeError)
