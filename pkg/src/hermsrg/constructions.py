"""The graphs being studied and the point sets they come from.

* ``build_nu``: tangent graph on the non-absolute points of PG(n, q^2).
* unitals of PG(2, q^2): Hermitian curve, orthogonal Buekenhout-Metz,
  Buekenhout-Tits, and duals of any of these.
* ``build_gamma_u``: graph on the points off a unital, adjacent when the
  joining line is tangent.
* (dual) O'Nan configurations.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .gf import FieldElement, FieldTable, absolute_trace, gf_q2, is_square_in_subfield, prime_power
from .graphcore import Graph
from .projgeom import (HermitianGeometry, ProjectiveSpace, hermitian_geometry, projective_space)

log = logging.getLogger(__name__)


class UnitalError(ValueError):
    """Bad unital parameters, or a point set that is not a unital."""


# -- NU(n+1, q^2) ---------------------------------------------------------------

def build_nu(n: int, q: int, gram=None, geometry: HermitianGeometry | None = None) -> Graph:
    """Tangent graph on PG(n, q^2) minus H(n, q^2).

    Vertex i is the i-th non-absolute point in ascending point order;
    ``labels`` holds those point indices.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    H = geometry or hermitian_geometry(n, q, gram)
    verts = H.non_absolute
    if len(verts) > 20000:
        raise ValueError(f"NU({n + 1},{q * q}) has {len(verts)} vertices; too large")
    adj = H.tangent_matrix(verts)
    return Graph(adj, labels=verts, name=f"NU({n + 1},{q * q})", check=False)


# -- unitals ----------------------------------------------------------------------

@dataclass(frozen=True)
class BMParams:
    """alpha, beta as field indices of GF(q^2)."""

    alpha: int
    beta: int

    @classmethod
    def of(cls, alpha, beta) -> BMParams:
        return cls(int(alpha), int(beta))


@dataclass
class Unital:
    q: int
    space: ProjectiveSpace
    points: np.ndarray
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.unique(np.asarray(self.points, dtype=np.int64))
        self.points.setflags(write=False)

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return f"Unital({self.kind}, q={self.q}, {len(self.points)} points)"

    @functools.cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.space.n_points, dtype=bool)
        m[self.points] = True
        return m

    @functools.cached_property
    def line_counts(self) -> np.ndarray:
        """|L meet U| for every line L (lines indexed like points, by duality)."""
        return line_point_counts(self.space, self.mask)

    @property
    def tangent_lines(self) -> np.ndarray:
        return np.nonzero(self.line_counts == 1)[0]

    @property
    def secant_lines(self) -> np.ndarray:
        return np.nonzero(self.line_counts == self.q + 1)[0]

    @property
    def external_points(self) -> np.ndarray:
        return np.nonzero(~self.mask)[0]

    def same_points(self, other: Unital) -> bool:
        return np.array_equal(self.points, other.points)


def line_point_counts(space: ProjectiveSpace, mask: np.ndarray) -> np.ndarray:
    inc = space.incidence
    out = np.empty(space.n_points, dtype=np.int64)
    m = mask.astype(np.float32)
    step = 2048
    for s in range(0, len(inc), step):
        out[s:s + step] = (inc[s:s + step].astype(np.float32) @ m).astype(np.int64)
    return out


def _plane(q: int) -> tuple[ProjectiveSpace, FieldTable]:
    space = projective_space(2, q)
    return space, space.field


def _points_from(space: ProjectiveSpace, cols) -> np.ndarray:
    vecs = np.stack([np.broadcast_to(c, np.broadcast_shapes(*(np.shape(x) for x in cols))) for c in cols],
                    axis=-1).reshape(-1, 3)
    return space.index(vecs)


def build_unital_classical(q: int, gram=None) -> Unital:
    H = hermitian_geometry(2, q, gram)
    return Unital(q, H.space, H.point_set, "classical", {"gram": H.gram_id})


def bm_param_violation(q: int, alpha: int, beta: int) -> str | None:
    """None if (alpha, beta) give an orthogonal Buekenhout-Metz unital, else the failed condition."""
    F = gf_q2(q)
    a, b = FieldElement(F, alpha), FieldElement(F, beta)
    bq = FieldElement(F, F.power(beta, q))
    anorm = FieldElement(F, F.power(alpha, q + 1))
    if q % 2:
        d = (b - bq) * (b - bq) + anorm * 4
        if d.value == 0 or is_square_in_subfield(d, q):
            return "(beta - beta^q)^2 + 4 alpha^(q+1) must be a non-square in GF(q)"
        return None
    if q == 2:
        return "orthogonal Buekenhout-Metz unitals need q > 2"
    if F.power(beta, q) == beta:
        return "beta must lie outside GF(q) for even q"
    t = anorm / ((b + bq) * (b + bq))
    if absolute_trace(t, q) != 0:
        return "alpha^(q+1)/(beta+beta^q)^2 must have absolute trace 0"
    return None


def valid_bm_params(q: int, classical: bool = False) -> list[BMParams]:
    """Every valid (alpha, beta) in index order; alpha != 0 unless ``classical``."""
    F = gf_q2(q)
    out = []
    for a in range(F.order):
        if (a == 0) != classical:
            continue
        for b in range(F.order):
            if bm_param_violation(q, a, b) is None:
                out.append(BMParams(a, b))
    return out


def build_unital_bm(q: int, p: BMParams) -> Unital:
    """{(x, a x^2 + b x^(q+1) + z, 1)} with the point (0, 1, 0)."""
    if q <= 2:
        raise UnitalError("orthogonal Buekenhout-Metz unitals need q > 2")
    why = bm_param_violation(q, p.alpha, p.beta)
    if why:
        raise UnitalError(why)
    space, F = _plane(q)
    x = np.arange(F.order)[:, None]
    z = F.subfield_indices(q)[None, :]
    x2 = F.power(x, 2)
    xn = F.power(x, q + 1)
    y = F.add_table[F.add_table[F.mul_table[p.alpha, x2], F.mul_table[p.beta, xn]], z]
    pts = _points_from(space, (x, y, np.ones_like(y)))
    pts = np.append(pts, space.index_of((0, 1, 0)))
    kind = "classical" if p.alpha == 0 else "bm"
    return Unital(q, space, pts, kind, {"family": "bm", "alpha": p.alpha, "beta": p.beta})


def build_unital_bm_alt(q: int, p: BMParams) -> Unital:
    """The same unital in the frame where the explicit dual O'Nan lines are known:
    {(-2 a x + (b^q - b) x^q, 1, a x^2 - b^q x^(q+1) - z)} with (0, 0, 1).  Odd q only."""
    if q % 2 == 0:
        raise UnitalError("this frame is only used for odd q")
    why = bm_param_violation(q, p.alpha, p.beta)
    if why:
        raise UnitalError(why)
    space, F = _plane(q)
    add, mul, neg, sub = F.add_table, F.mul_table, F.neg_table, F.sub_table
    x = np.arange(F.order)[:, None]
    z = F.subfield_indices(q)[None, :]
    two_a = add[p.alpha, p.alpha]
    bq = F.power(p.beta, q)
    c0 = add[neg[mul[two_a, x]], mul[sub[bq, p.beta], F.power(x, q)]]
    c2 = sub[sub[mul[p.alpha, F.power(x, 2)], mul[bq, F.power(x, q + 1)]], z]
    c0 = np.broadcast_to(c0, c2.shape)
    pts = _points_from(space, (c0, np.ones_like(c2), c2))
    pts = np.append(pts, space.index_of((0, 0, 1)))
    return Unital(q, space, pts, "bm_alt" if p.alpha else "classical",
                  {"family": "bm_alt", "alpha": p.alpha, "beta": p.beta})


def build_unital_bt(q: int) -> Unital:
    """{(x0 + x1 b, (x0^(d+2) + x0 x1 + x1^d) b + z, 1)} with (0, 1, 0); q = 2^m, m odd > 1."""
    p, m = prime_power(q)
    if p != 2 or m % 2 == 0 or m == 1:
        raise UnitalError(f"Buekenhout-Tits unitals need q = 2^m with m odd and > 1 (got q={q})")
    space, F = _plane(q)
    sub = F.subfield_indices(q)
    beta = int(next(i for i in range(F.order) if i not in set(sub.tolist())))
    delta = 2 ** ((m + 1) // 2)
    add, mul = F.add_table, F.mul_table
    x0 = sub[:, None, None]
    x1 = sub[None, :, None]
    z = sub[None, None, :]
    c0 = add[x0, mul[x1, beta]]
    poly = add[add[F.power(x0, delta + 2), mul[x0, x1]], F.power(x1, delta)]
    c1 = add[mul[poly, beta], z]
    c0 = np.broadcast_to(c0, c1.shape)
    pts = _points_from(space, (c0, c1, np.ones_like(c1)))
    pts = np.append(pts, space.index_of((0, 1, 0)))
    return Unital(q, space, pts, "bt", {"family": "bt", "beta": beta, "delta": delta})


@dataclass
class UnitalReport:
    ok: bool
    n_points: int
    n_tangent: int = 0
    n_secant: int = 0
    violation: dict | None = None

    def __bool__(self):
        return self.ok


def validate_unital(points, space: ProjectiveSpace, q: int) -> UnitalReport:
    """Check every line meets the set in 1 or q+1 points, plus the derived counts
    (tangents through unital and external points)."""
    points = np.unique(np.asarray(points, dtype=np.int64))
    if len(points) != q**3 + 1:
        return UnitalReport(False, len(points), violation={"reason": "size", "count": len(points)})
    mask = np.zeros(space.n_points, dtype=bool)
    mask[points] = True
    counts = line_point_counts(space, mask)
    bad = np.nonzero((counts != 1) & (counts != q + 1))[0]
    if len(bad):
        L = int(bad[0])
        return UnitalReport(False, len(points), violation={"reason": "line", "line": L,
                                                           "coords": space.coords[L].tolist(),
                                                           "count": int(counts[L])})
    tang = counts == 1
    n_t, n_s = int(tang.sum()), int((~tang).sum())
    rep = UnitalReport(True, len(points), n_t, n_s)
    per_point = space.incidence[tang].sum(axis=0)
    checks = [
        (n_t == q**3 + 1, "tangent count"),
        (n_s == q**4 - q**3 + q * q, "secant count"),
        (np.all(per_point[mask] == 1), "tangents through a unital point"),
        (np.all(per_point[~mask] == q + 1), "tangents through an external point"),
    ]
    for good, what in checks:
        if not good:
            rep.ok = False
            rep.violation = {"reason": what}
            break
    return rep


def check_unital(U: Unital) -> UnitalReport:
    rep = validate_unital(U.points, U.space, U.q)
    if not rep:
        raise UnitalError(f"{U} is not a unital: {rep.violation}")
    return rep


def build_gamma_u(U: Unital, validate: bool = True) -> Graph:
    """Graph on the points off U; adjacent iff the joining line is tangent to U."""
    if validate:
        check_unital(U)
    ext = U.external_points
    M = U.space.incidence[U.tangent_lines][:, ext].astype(np.float32)
    adj = (M.T @ M) > 0
    np.fill_diagonal(adj, False)
    return Graph(adj, labels=ext, name=f"Gamma[{U.kind}, q={U.q}]", check=False)


def dual_unital(U: Unital) -> Unital:
    """Tangent lines of U read as points via (a, b, c) <-> [a, b, c]."""
    params = {"of": U.kind, **{f"of_{k}": v for k, v in U.params.items() if not isinstance(v, dict)}}
    return Unital(U.q, U.space, U.tangent_lines, "dual", params)


# -- O'Nan configurations -----------------------------------------------------------

@dataclass
class OnanConfig:
    """``form == "dual"``: four external points and the six tangent lines joining them.
    ``form == "primal"``: four lines of the plane and their six meeting points on U.
    Lines and points are both plane indices (lines by duality)."""

    form: str
    points: tuple[int, ...]
    lines: tuple[int, ...]
    route: str

    def to_json(self, space: ProjectiveSpace | None = None) -> dict:
        d = {"form": self.form, "points": list(self.points), "lines": list(self.lines), "route": self.route}
        if space is not None:
            d["point_coords"] = [space.coords[p].tolist() for p in self.points]
            d["line_coords"] = [space.coords[p].tolist() for p in self.lines]
        return d


def _collinear(space: ProjectiveSpace, a: int, b: int, c: int) -> bool:
    return bool(space.incidence[int(space.join(a, b)[0]), c])


def check_dual_onan(U: Unital, pts) -> bool:
    pts = [int(p) for p in pts]
    if len(set(pts)) != 4 or U.mask[pts].any():
        return False
    S = U.space
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                if _collinear(S, pts[i], pts[j], pts[k]):
                    return False
    counts = U.line_counts
    return all(counts[int(S.join(pts[i], pts[j])[0])] == 1 for i in range(4) for j in range(i + 1, 4))


def _config(U: Unital, pts, route: str) -> OnanConfig:
    S = U.space
    pts = tuple(sorted(int(p) for p in pts))
    lines = tuple(int(S.join(pts[i], pts[j])[0]) for i in range(4) for j in range(i + 1, 4))
    return OnanConfig("dual", pts, lines, route)


def onan_seed_points(U: Unital) -> list[tuple[int, ...]]:
    """Candidate dual O'Nan point quadruples from the explicit six-line family.

    Only meaningful for unitals built by ``build_unital_bm_alt``.  The
    lambda_1, lambda_2 equation is solved by trying all of GF(q)^2.
    """
    if U.params.get("family") != "bm_alt" or U.params.get("alpha", 0) == 0:
        return []
    q = U.q
    S = U.space
    F = S.field
    a = FieldElement(F, U.params["alpha"])
    b = FieldElement(F, U.params["beta"])
    aq = FieldElement(F, F.power(a.value, q))
    an = FieldElement(F, F.power(a.value, q + 1))
    bn = FieldElement(F, F.power(b.value, q + 1))

    def nrm(e: FieldElement) -> FieldElement:
        return FieldElement(F, F.power(e.value, q + 1))

    def x_of(lam: FieldElement):
        den = an - nrm(lam - b)
        if den.value == 0:
            return None
        return -(aq + lam - b) / den

    sub = [FieldElement(F, int(s)) for s in F.subfield_indices(q)]
    out = []
    for l1 in sub:
        for l2 in sub:
            if l1 == l2:
                continue
            lhs = nrm(l1 + aq - b) * (an - bn - l2 * l2) + nrm(l2 + aq - b) * (an - bn - l1 * l1)
            if lhs.value != 0:
                continue
            x1, x2 = x_of(l1), x_of(l2)
            if x1 is None or x2 is None or x1 == x2 or x1.value == 0 or x2.value == 0:
                continue
            lines = [(0, 0, 1), (0, (x1 * x2 * -2).value, (x1 + x2).value),
                     (x1.value, (-x1).value, 1), (x2.value, (-x2).value, 1),
                     ((-x1).value, (-x1).value, 1), ((-x2).value, (-x2).value, 1)]
            if any(not any(L) for L in lines):
                continue
            idx = S.index(np.array(lines))
            if len(set(idx.tolist())) != 6:
                continue
            inc = S.incidence[idx]
            on3 = np.nonzero(inc.sum(axis=0) >= 3)[0]
            if len(on3) == 4:
                out.append(tuple(int(p) for p in on3))
    return out


def find_dual_onan(U: Unital, use_seed: bool = True) -> OnanConfig | None:
    """Four external points, no three collinear, all six joining lines tangent.

    Tries the explicit seed family first (when U is in the matching frame),
    then an exhaustive search that returns the lexicographically smallest
    quadruple.  ``route`` on the result says which one answered.
    """
    if use_seed:
        for pts in onan_seed_points(U):
            if check_dual_onan(U, pts):
                log.info("dual O'Nan configuration from the explicit family")
                return _config(U, pts, "seed")
    G = build_gamma_u(U, validate=False)
    S = U.space
    lab = G.labels
    inc = S.incidence
    adj = G.adj
    n = G.n_vertices
    for a in range(n):
        Na = np.nonzero(adj[a])[0]
        for b in Na[Na > a]:
            lab_ab = inc[int(S.join(lab[a], lab[b])[0])]
            C = np.nonzero(adj[a] & adj[b])[0]
            C = C[(C > b) & ~lab_ab[lab[C]]]
            for c in C:
                lac = inc[int(S.join(lab[a], lab[c])[0])]
                lbc = inc[int(S.join(lab[b], lab[c])[0])]
                D = np.nonzero(adj[a] & adj[b] & adj[c])[0]
                D = D[D > c]
                lD = lab[D]
                D = D[~(lab_ab[lD] | lac[lD] | lbc[lD])]
                if len(D):
                    pts = (lab[a], lab[b], lab[c], lab[D[0]])
                    assert check_dual_onan(U, pts)
                    return _config(U, pts, "exhaustive")
    return None


def find_onan(U: Unital) -> OnanConfig | None:
    """Four lines meeting pairwise in six distinct points of U.

    Found as a dual configuration of the dual unital and read back: an
    external point of U* is a non-tangent line of U, and a line tangent to
    U* is (the dual of) a point of U.
    """
    D = dual_unital(U)
    cfg = find_dual_onan(D, use_seed=False)
    if cfg is None:
        return None
    S = U.space
    lines = cfg.points
    meets = tuple(int(S.join(lines[i], lines[j])[0]) for i in range(4) for j in range(i + 1, 4))
    if not (U.mask[list(meets)].all() and len(set(meets)) == 6):
        raise AssertionError("dual configuration did not map to a primal one")
    return OnanConfig("primal", meets, lines, cfg.route)


# -- text IO ------------------------------------------------------------------------

def write_unital(U: Unital, path) -> None:
    items = " ".join(f"{k}={v}" for k, v in sorted(U.params.items()))
    header = f"# hermsrg-unital n=2 q={U.q} kind={U.kind} {items}".rstrip()
    Path(path).write_text(header + "\n" + "".join(f"{int(p)}\n" for p in U.points))


def read_unital(path) -> Unital:
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("# hermsrg-unital"):
        raise UnitalError("missing '# hermsrg-unital' header")
    meta = dict(tok.split("=", 1) for tok in lines[0].split()[2:])
    q = int(meta.pop("q"))
    if int(meta.pop("n", 2)) != 2:
        raise UnitalError("only plane unitals are supported")
    kind = meta.pop("kind", "unknown")
    params = {k: int(v) if v.lstrip("-").isdigit() else v for k, v in meta.items()}
    pts = np.array([int(s) for s in lines[1:] if s.strip()], dtype=np.int64)
    return Unital(q, projective_space(2, q), pts, kind, params)
