"""Projective spaces PG(n, q^2), Hermitian varieties and their sections.

Points are interned: every :class:`ProjectiveSpace` owns a coordinate array
sorted lexicographically (coordinates compared as field indices, normalised
so the first nonzero entry is 1) and everything downstream passes point
indices around.  Subspaces are kept in reduced row-echelon form, which makes
equality and hashing canonical.

Hermitian forms follow ``h(x, y) = x^T G y^q`` with ``G`` Hermitian
(``G^T = G^q``), so the identity Gram matrix gives ``sum X_i^(q+1)``.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .gf import FieldTable, gf_q2, prime_power
from .linalg import fmatmul, nullspace, rank, rref

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9)


class GeometryError(RuntimeError):
    """An internal geometric consistency check failed."""


@dataclass(frozen=True)
class ProjPoint:
    """A point as a normalised coordinate tuple of field indices."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("the zero vector is not a projective point")
        lead = next(c for c in self.coords if c)
        if lead != 1:
            raise ValueError("coordinates must be normalised (first nonzero = 1)")


class Subspace:
    """A projective subspace given by an RREF basis over ``field``."""

    __slots__ = ("field", "basis", "_key", "__dict__")

    def __init__(self, field: FieldTable, vectors):
        vectors = np.atleast_2d(np.asarray(vectors))
        if vectors.size == 0:
            raise ValueError("empty subspace")
        R, _ = rref(field, vectors)
        R.setflags(write=False)
        self.field = field
        self.basis = R
        self._key = (R.shape, R.tobytes())

    @property
    def dim(self) -> int:
        """Projective dimension."""
        return self.basis.shape[0] - 1

    @property
    def ambient(self) -> int:
        return self.basis.shape[1]

    @functools.cached_property
    def annihilator(self) -> np.ndarray:
        return nullspace(self.field, self.basis)

    def contains_vectors(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.atleast_2d(vecs)
        ann = self.annihilator
        if ann.shape[0] == 0:
            return np.ones(len(vecs), dtype=bool)
        return ~np.any(fmatmul(self.field, vecs, ann.T), axis=1)

    def __contains__(self, other: Subspace) -> bool:
        return bool(np.all(self.contains_vectors(other.basis)))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={self.basis.tolist()})"


def _all_tuples(Q: int, k: int) -> np.ndarray:
    """All k-tuples over range(Q) in lexicographic order, shape (Q**k, k)."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((Q,) * k, dtype=np.int64).reshape(k, -1).T.copy()


def _normalized_vectors(F: FieldTable, d: int) -> np.ndarray:
    """All normalised nonzero vectors of length d, sorted lexicographically."""
    Q = F.order
    blocks = []
    for pivot in range(d):
        tail = d - pivot - 1
        free = _all_tuples(Q, tail)
        block = np.zeros((len(free), d), dtype=np.int64)
        block[:, pivot] = 1
        block[:, pivot + 1:] = free
        blocks.append(block)
    vecs = np.concatenate(blocks)
    codes = vecs @ (Q ** np.arange(d - 1, -1, -1))
    return vecs[np.argsort(codes)].astype(F.add_table.dtype)


class ProjectiveSpace:
    """PG(n, F) with interned, lexicographically ordered points."""

    def __init__(self, n: int, field: FieldTable):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.field = field
        self.d = n + 1
        Q = field.order
        self.coords = _normalized_vectors(field, self.d)
        self.coords.setflags(write=False)
        self._weights = Q ** np.arange(self.d - 1, -1, -1, dtype=np.int64)
        self._index = np.full(Q**self.d, -1, dtype=np.int32)
        self._index[self.coords.astype(np.int64) @ self._weights] = np.arange(len(self.coords))

    def __repr__(self):
        return f"PG({self.n}, {self.field.order})"

    @property
    def n_points(self) -> int:
        return len(self.coords)

    def normalize(self, vecs: np.ndarray) -> np.ndarray:
        F = self.field
        vecs = np.atleast_2d(np.asarray(vecs))
        nz = vecs != 0
        if not np.all(nz.any(axis=1)):
            raise ValueError("zero vector has no projective point")
        first = nz.argmax(axis=1)
        lead = vecs[np.arange(len(vecs)), first]
        return F.mul_table[vecs, F.inv_table[lead][:, None]]

    def index(self, vecs: np.ndarray) -> np.ndarray:
        """Point indices of (not necessarily normalised) coordinate vectors."""
        v = self.normalize(vecs).astype(np.int64)
        return self._index[v @ self._weights].astype(np.int64)

    def point(self, i: int) -> ProjPoint:
        return ProjPoint(tuple(int(c) for c in self.coords[i]))

    def index_of(self, p: ProjPoint | tuple) -> int:
        coords = p.coords if isinstance(p, ProjPoint) else p
        return int(self.index(np.array([coords]))[0])

    # -- subspaces -------------------------------------------------------------

    def span(self, points) -> Subspace:
        """Span of point indices and/or subspaces."""
        rows = []
        for p in points:
            if isinstance(p, Subspace):
                rows.append(p.basis)
            else:
                rows.append(self.coords[np.atleast_1d(p)])
        return Subspace(self.field, np.concatenate(rows))

    def meet(self, a: Subspace, b: Subspace) -> Subspace | None:
        ann = np.concatenate([a.annihilator, b.annihilator])
        basis = nullspace(self.field, ann)
        return Subspace(self.field, basis) if len(basis) else None

    def points_of(self, sub: Subspace) -> np.ndarray:
        """Sorted point indices of a subspace."""
        k = sub.basis.shape[0]
        coeffs = _normalized_vectors(self.field, k)
        return np.sort(self.index(fmatmul(self.field, coeffs, sub.basis)))

    def points_of_bases(self, bases: np.ndarray) -> np.ndarray:
        """Point indices for a stack of bases (m, k, d) -> (m, #points)."""
        m, k, _ = bases.shape
        coeffs = _normalized_vectors(self.field, k)
        F = self.field
        acc = np.zeros((m, len(coeffs), self.d), dtype=F.add_table.dtype)
        for i in range(k):
            acc = F.add_table[acc, F.mul_table[coeffs[None, :, i, None], bases[:, None, i, :]]]
        idx = self.index(acc.reshape(-1, self.d)).reshape(m, len(coeffs))
        return np.sort(idx, axis=1)

    def contains(self, sub: Subspace, idx) -> np.ndarray:
        return sub.contains_vectors(self.coords[np.atleast_1d(idx)])

    def subspace_bases(self, k: int) -> np.ndarray:
        """RREF bases (m, k, d) of every subspace of vector dimension k."""
        F = self.field
        Q, d = F.order, self.d
        out = []
        for pivots in combinations(range(d), k):
            slots = [(r, c) for r in range(k) for c in range(pivots[r] + 1, d) if c not in pivots]
            free = _all_tuples(Q, len(slots))
            block = np.zeros((len(free), k, d), dtype=np.int64)
            for r, c in enumerate(pivots):
                block[:, r, c] = 1
            for j, (r, c) in enumerate(slots):
                block[:, r, c] = free[:, j]
            out.append(block)
        return np.concatenate(out).astype(F.add_table.dtype)

    def line(self, i: int, j: int) -> Subspace:
        if i == j:
            raise ValueError("a line needs two distinct points")
        return self.span([i, j])

    # -- plane-only helpers (n == 2), lines addressed by dual coordinates -------

    @functools.cached_property
    def incidence(self) -> np.ndarray:
        """For n = 2: bool matrix inc[L, X], line [L] through point X."""
        if self.n != 2:
            raise ValueError("line incidence by duality is only defined for planes")
        F = self.field
        C = self.coords
        inc = np.zeros((len(C), len(C)), dtype=bool)
        step = max(1, 2_000_000 // len(C))
        for s in range(0, len(C), step):
            inc[s:s + step] = fmatmul(F, C[s:s + step], C.T) == 0
        inc.setflags(write=False)
        return inc

    def join(self, i, j) -> np.ndarray:
        """For n = 2: index of the line through points i and j (cross product)."""
        F = self.field
        a = self.coords[np.atleast_1d(i)].astype(np.int64)
        b = self.coords[np.atleast_1d(j)].astype(np.int64)
        mul, sub = F.mul_table, F.sub_table
        cross = np.stack([
            sub[mul[a[:, 1], b[:, 2]], mul[a[:, 2], b[:, 1]]],
            sub[mul[a[:, 2], b[:, 0]], mul[a[:, 0], b[:, 2]]],
            sub[mul[a[:, 0], b[:, 1]], mul[a[:, 1], b[:, 0]]],
        ], axis=1)
        return self.index(cross)


@functools.lru_cache(maxsize=None)
def projective_space(n: int, q: int) -> ProjectiveSpace:
    """PG(n, q^2) (cached)."""
    if q not in SUPPORTED_Q:
        raise ValueError(f"unsupported q={q}; supported: {SUPPORTED_Q}")
    return ProjectiveSpace(n, gf_q2(q))


def enumerate_points(n: int, q: int) -> list[ProjPoint]:
    space = projective_space(n, q)
    return [space.point(i) for i in range(space.n_points)]


# -- Hermitian geometry ---------------------------------------------------------

class LineType(enum.Enum):
    TANGENT = "tangent"
    SECANT = "secant"
    GENERATOR = "generator"


class PlaneSection(enum.Enum):
    LINE = "line"
    PENCIL = "pencil"
    HERMITIAN_CURVE = "hermitian_curve"
    PLANE = "plane"


def hermitian_point_count(n: int, q: int) -> int:
    s = (-1) ** n
    return (q ** (n + 1) + s) * (q**n - s) // (q * q - 1)


class HermitianGeometry:
    """A nondegenerate Hermitian variety H(n, q^2) inside PG(n, q^2)."""

    def __init__(self, space: ProjectiveSpace, q: int, gram=None, gram_id: str | None = None):
        F = space.field
        F.check_square_order(q)
        self.space = space
        self.field = F
        self.n = space.n
        self.q = q
        d = space.d
        if gram is None:
            gram = np.eye(d, dtype=np.int64)
            gram_id = gram_id or "identity"
        gram = np.asarray(gram, dtype=np.int64)
        if gram.shape != (d, d):
            raise ValueError(f"Gram matrix must be {d}x{d}")
        self.conj = F.power_map(q)
        self.norm_map = F.power_map(q + 1)
        if not np.array_equal(gram.T, self.conj[gram]):
            raise ValueError("Gram matrix is not Hermitian")
        if rank(F, gram) != d:
            raise ValueError("Gram matrix is singular")
        self.gram = gram.astype(F.add_table.dtype)
        self.gram.setflags(write=False)
        self.gram_id = gram_id or "g" + "".join(f"{x:02x}" for x in self.gram.ravel())
        # h(x, y) = x . w(y) with w(y) = G y^q
        self.w = fmatmul(F, self.conj[space.coords], self.gram.T)
        self.self_h = _rowdot(F, space.coords, self.w)
        self.absolute = self.self_h == 0
        self.point_set = np.nonzero(self.absolute)[0]
        self.non_absolute = np.nonzero(~self.absolute)[0]
        expected = hermitian_point_count(self.n, q)
        if len(self.point_set) != expected:
            raise GeometryError(f"|H| = {len(self.point_set)}, expected {expected}")

    def __repr__(self):
        return f"H({self.n}, {self.q}^2)[{self.gram_id}]"

    def h(self, X, Y) -> np.ndarray:
        """Matrix of h(x, y) for point indices X (rows) and Y (columns)."""
        X = np.atleast_1d(X)
        Y = np.atleast_1d(Y)
        return fmatmul(self.field, self.space.coords[X], self.w[Y].T)

    def line_sizes(self, X, Y) -> np.ndarray:
        """|<x, y> meet H| for all pairs; pairs with x == y give 0."""
        X = np.atleast_1d(X)
        Y = np.atleast_1d(Y)
        F = self.field
        hxy = self.h(X, Y)
        hx = self.self_h[X][:, None]
        hy = self.self_h[Y][None, :]
        det0 = F.mul_table[hx, hy] == self.norm_map[hxy]
        allzero = (hxy == 0) & (hx == 0) & (hy == 0)
        q = self.q
        out = np.where(det0, np.where(allzero, q * q + 1, 1), q + 1)
        out[X[:, None] == Y[None, :]] = 0
        return out

    def tangent_matrix(self, idx, chunk: int = 512) -> np.ndarray:
        """Bool matrix: the line joining idx[i], idx[j] is tangent (i != j)."""
        idx = np.asarray(idx)
        out = np.zeros((len(idx), len(idx)), dtype=bool)
        for s in range(0, len(idx), chunk):
            out[s:s + chunk] = self.line_sizes(idx[s:s + chunk], idx) == 1
        return out

    def polar(self, sub: Subspace) -> Subspace | None:
        rows = fmatmul(self.field, self.conj[sub.basis], self.gram.T)
        basis = nullspace(self.field, rows)
        return Subspace(self.field, basis) if len(basis) else None

    def polar_of_point(self, i: int) -> Subspace:
        return self.polar(self.space.span([i]))

    def intersection(self, sub: Subspace) -> np.ndarray:
        pts = self.space.points_of(sub)
        return pts[self.absolute[pts]]

    def classify_line(self, line: Subspace) -> LineType:
        if line.dim != 1:
            raise ValueError("not a line")
        k = len(self.intersection(line))
        q = self.q
        if k == 1:
            return LineType.TANGENT
        if k == q + 1:
            return LineType.SECANT
        if k == q * q + 1:
            if self.n < 3:
                raise GeometryError("generator line in a plane")
            return LineType.GENERATOR
        raise GeometryError(f"line meets H in {k} points")

    def restricted_gram(self, sub: Subspace) -> np.ndarray:
        B = sub.basis
        return fmatmul(self.field, B, fmatmul(self.field, self.gram, self.conj[B].T))

    def classify_plane_section(self, plane: Subspace) -> PlaneSection:
        """Line, Hermitian pencil or nondegenerate curve, cross-checked three ways.

        The rank of the restricted form, the number of absolute points and (for
        n = 4) the type of the polar line must all agree.
        """
        if plane.dim != 2:
            raise ValueError("not a plane")
        q = self.q
        r = rank(self.field, self.restricted_gram(plane))
        k = len(self.intersection(plane))
        by_rank = {3: PlaneSection.HERMITIAN_CURVE, 2: PlaneSection.PENCIL,
                   1: PlaneSection.LINE, 0: PlaneSection.PLANE}[r]
        sizes = {PlaneSection.HERMITIAN_CURVE: q**3 + 1,
                 PlaneSection.PENCIL: q**3 + q**2 + 1,
                 PlaneSection.LINE: q**2 + 1,
                 PlaneSection.PLANE: q**4 + q**2 + 1}
        if sizes[by_rank] != k:
            raise GeometryError(f"rank-{r} plane section has {k} points")
        if self.n == 4:
            polar_type = self.classify_line(self.polar(plane))
            expected = {PlaneSection.LINE: LineType.GENERATOR,
                        PlaneSection.PENCIL: LineType.TANGENT,
                        PlaneSection.HERMITIAN_CURVE: LineType.SECANT}
            if expected.get(by_rank) != polar_type:
                raise GeometryError(f"{by_rank} section but polar line is {polar_type}")
        return by_rank

    def tangent_set(self, R: int, targets=None) -> np.ndarray:
        """Points of ``targets`` lying on a line through R tangent to H (R excluded)."""
        targets = self.space_points() if targets is None else np.asarray(targets)
        sizes = self.line_sizes([R], targets)[0]
        return targets[sizes == 1]

    def space_points(self) -> np.ndarray:
        return np.arange(self.space.n_points)


def _rowdot(F: FieldTable, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    acc = np.zeros(len(A), dtype=F.add_table.dtype)
    for i in range(A.shape[1]):
        acc = F.add_table[acc, F.mul_table[A[:, i], B[:, i]]]
    return acc


def hermitian_geometry(n: int, q: int, gram=None, gram_id: str | None = None) -> HermitianGeometry:
    return HermitianGeometry(projective_space(n, q), q, gram, gram_id)


def paper_gram(q: int) -> np.ndarray:
    """Gram matrix of X1^q X2 + X1 X2^q + X3^(q+1) on PG(2, q^2)."""
    return np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]])


def random_frame_gram(n: int, q: int, seed: int, base=None) -> np.ndarray:
    """M^T G M^q for a seeded random invertible M: the same variety in another frame."""
    F = gf_q2(q)
    rng = np.random.default_rng(seed)
    d = n + 1
    G = np.eye(d, dtype=np.int64) if base is None else np.asarray(base)
    while True:
        M = rng.integers(0, F.order, size=(d, d))
        if rank(F, M) == d:
            break
    conjM = F.power_map(q)[M]
    return fmatmul(F, M.T, fmatmul(F, G, conjM)).astype(np.int64)


# -- Baer sublines and Hermitian pencils ---------------------------------------

@dataclass(frozen=True)
class BaerSubline:
    carrier: Subspace
    points: frozenset[int]


def _solve_pair(F: FieldTable, v1, v2, v3):
    """(a, b) with v3 = a v1 + b v2, or None if v3 is not in the span."""
    d = len(v1)
    for r in range(d):
        for s in range(r + 1, d):
            det = F.sub_table[F.mul_table[v1[r], v2[s]], F.mul_table[v1[s], v2[r]]]
            if det:
                inv = F.inv_table[det]
                a = F.mul_table[F.sub_table[F.mul_table[v3[r], v2[s]], F.mul_table[v3[s], v2[r]]], inv]
                b = F.mul_table[F.sub_table[F.mul_table[v1[r], v3[s]], F.mul_table[v1[s], v3[r]]], inv]
                comb = F.add_table[F.mul_table[a, v1], F.mul_table[b, v2]]
                return (int(a), int(b)) if np.array_equal(comb, v3) else None
    return None


def baer_subline(space: ProjectiveSpace, q: int, p1: int, p2: int, p3: int) -> BaerSubline:
    """The unique Baer subline through three distinct collinear points."""
    if len({p1, p2, p3}) != 3:
        raise ValueError("points must be distinct")
    F = space.field
    v1, v2, v3 = (space.coords[p].astype(np.int64) for p in (p1, p2, p3))
    ab = _solve_pair(F, v1, v2, v3)
    if ab is None:
        raise ValueError("points are not collinear")
    a, b = ab
    c = F.div(b, a)
    sub = F.subfield_indices(q)
    cv2 = F.mul_table[c, v2]
    vecs = F.add_table[v1[None, :], F.mul_table[sub[:, None], cv2[None, :]]]
    pts = set(space.index(vecs).tolist()) | {p2}
    return BaerSubline(space.line(p1, p2), frozenset(pts))


def baer_sublines_of_line(space: ProjectiveSpace, q: int, line: Subspace) -> list[frozenset[int]]:
    """Every Baer subline of a line, found by closing all point triples."""
    pts = space.points_of(line).tolist()
    seen: dict[frozenset[int], None] = {}
    for a, b, c in combinations(pts, 3):
        seen.setdefault(baer_subline(space, q, a, b, c).points)
    found = list(seen)
    expected = q * (q * q + 1)
    if len(found) != expected:
        raise GeometryError(f"found {len(found)} Baer sublines, expected {expected}")
    return found


@dataclass
class PencilFamily:
    """Hermitian pencils of one plane as rows of a point-membership matrix."""

    plane_points: np.ndarray  # global indices, column order of masks
    vertices: np.ndarray  # global index of each pencil's vertex
    masks: np.ndarray  # (n_pencils, n_plane_points) bool

    def __len__(self):
        return len(self.masks)

    def point_sets(self) -> list[np.ndarray]:
        return [self.plane_points[m] for m in self.masks]

    def column(self, points) -> np.ndarray:
        pos = np.searchsorted(self.plane_points, np.atleast_1d(points))
        if np.any(self.plane_points[np.minimum(pos, len(self.plane_points) - 1)] != np.atleast_1d(points)):
            raise ValueError("point is not in the plane")
        return pos

    def select(self, keep: np.ndarray) -> PencilFamily:
        return PencilFamily(self.plane_points, self.vertices[keep], self.masks[keep])

    def containing(self, points) -> PencilFamily:
        cols = self.column(points)
        return self.select(np.all(self.masks[:, cols], axis=1))

    def meeting(self, points, size: int) -> PencilFamily:
        cols = self.column(points)
        return self.select(self.masks[:, cols].sum(axis=1) == size)

    def keys(self) -> list[bytes]:
        return [np.packbits(m).tobytes() for m in self.masks]


@functools.lru_cache(maxsize=None)
def _local_pencils(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Pencils of PG(2, q^2) in its own coordinates: (vertices, masks)."""
    space = projective_space(2, q)
    F = space.field
    N = space.n_points
    axis_lines = [Subspace(F, np.delete(np.eye(3, dtype=np.int64), k, axis=0)) for k in range(3)]
    line_pts = [space.points_of(m) for m in axis_lines]
    sublines = [baer_sublines_of_line(space, q, m) for m in axis_lines]
    sub_inc = []
    for k in range(3):
        pos = {p: i for i, p in enumerate(line_pts[k].tolist())}
        inc = np.zeros((len(sublines[k]), len(line_pts[k])), dtype=np.int32)
        for r, s in enumerate(sublines[k]):
            inc[r, [pos[p] for p in s]] = 1
        sub_inc.append(inc)
    verts, masks = [], []
    for V in range(N):
        k = int(np.nonzero(space.coords[V])[0][0])  # V is off the line X_k = 0
        m_pts = line_pts[k]
        joins = space.join(np.full(len(m_pts), V), m_pts)
        line_masks = space.incidence[joins].astype(np.int32)
        cones = (sub_inc[k] @ line_masks) > 0
        verts.append(np.full(len(cones), V))
        masks.append(cones)
    return np.concatenate(verts), np.concatenate(masks)


def hermitian_pencils_of_plane(space: ProjectiveSpace, q: int, plane: Subspace,
                               contains=(), meets=()) -> PencilFamily:
    """All Hermitian pencils of lines of a plane, optionally filtered.

    ``contains`` lists points every pencil must contain; ``meets`` is a list
    of ``(points, size)`` pairs requiring ``|pencil meet points| == size``.
    """
    if plane.dim != 2:
        raise ValueError("not a plane")
    local = projective_space(2, q)
    verts, masks = _local_pencils(q)
    glob = space.index(fmatmul(space.field, local.coords, plane.basis))
    order = np.argsort(glob)
    fam = PencilFamily(glob[order], glob[verts], masks[:, order])
    if contains:
        fam = fam.containing(list(contains))
    for pts, size in meets:
        fam = fam.meeting(pts, size)
    return fam


def fit_hermitian_form(space: ProjectiveSpace, q: int, plane: Subspace, points) -> tuple[np.ndarray, int] | None:
    """Hermitian form on a plane whose zero set is exactly ``points``.

    Solves the GF(q)-linear conditions h(y, y) = 0 for y in the set.  Returns
    ``(gram_in_plane_coords, rank)`` when the solution space is one-dimensional
    and the zero set matches, else None.
    """
    F = space.field
    points = np.sort(np.asarray(points))
    local = projective_space(2, q)
    glob = space.index(fmatmul(F, local.coords, plane.basis))
    in_set = np.isin(glob, points)
    if in_set.sum() != len(points):
        raise ValueError("points are not all in the plane")
    Y = local.coords[in_set].astype(np.int64)
    conj = F.power_map(q)
    nrm = F.power_map(q + 1)
    omega = _non_subfield_element(F, q)
    cols = [nrm[Y[:, 0]], nrm[Y[:, 1]], nrm[Y[:, 2]]]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        w = F.mul_table[Y[:, i], conj[Y[:, j]]]
        ow = F.mul_table[omega, w]
        cols.append(F.add_table[w, conj[w]])
        cols.append(F.add_table[ow, conj[ow]])
    sol = nullspace(F, np.stack(cols, axis=1))
    if len(sol) != 1:
        return None
    s = sol[0]
    G = np.zeros((3, 3), dtype=np.int64)
    G[0, 0], G[1, 1], G[2, 2] = s[0], s[1], s[2]
    for k, (i, j) in enumerate(((0, 1), (0, 2), (1, 2))):
        a = F.add_table[s[3 + 2 * k], F.mul_table[s[4 + 2 * k], omega]]
        G[i, j] = a
        G[j, i] = conj[a]
    zero = _rowdot(F, local.coords, fmatmul(F, conj[local.coords], G.T)) == 0
    if not np.array_equal(zero, in_set):
        return None
    return G, rank(F, G)


def _non_subfield_element(F: FieldTable, q: int) -> int:
    sub = set(F.subfield_indices(q).tolist())
    return next(i for i in range(F.order) if i not in sub)


def q_of_field(F: FieldTable) -> int:
    p, m = prime_power(F.order)
    if m % 2:
        raise ValueError(f"{F} is not a square-order field")
    return p ** (m // 2)
