"""Switching NU(n+1, q^2) along two tangent lines at a common point.

Fix P on H and two lines through P meeting H only in P.  With l1, l2 the
q^2 remaining points of those lines, the graph is switched between
l1 u l2 and the vertices adjacent to all of exactly one l_i.  The plane of
the two lines meets H in a Hermitian pencil ("pencil", giving G') or in a
single line ("line", giving G'').
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .constructions import build_nu
from .graphcore import Graph
from .projgeom import (HermitianGeometry, LineType, PlaneSection, Subspace, baer_subline,
                       hermitian_geometry)

log = logging.getLogger(__name__)

VARIANTS = {"pencil": PlaneSection.PENCIL, "line": PlaneSection.LINE}


class SwitchingError(AssertionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class SwitchingConfig:
    geometry: HermitianGeometry
    P: int
    x1: int  # lowest point of line 1 other than P
    x2: int
    variant: str

    def __post_init__(self):
        S = self.geometry.space
        self.line1 = S.line(self.P, self.x1)
        self.line2 = S.line(self.P, self.x2)
        self.plane = S.span([self.line1, self.line2])
        pts1 = S.points_of(self.line1)
        pts2 = S.points_of(self.line2)
        self.ell1 = pts1[pts1 != self.P]
        self.ell2 = pts2[pts2 != self.P]
        H = self.geometry
        if not H.absolute[self.P]:
            raise SwitchingError("P is not on H")
        for L in (self.line1, self.line2):
            if H.classify_line(L) is not LineType.TANGENT:
                raise SwitchingError("switching lines must meet H only in P")
        if self.plane.dim != 2:
            raise SwitchingError("the two lines coincide")
        got = H.classify_plane_section(self.plane)
        if VARIANTS[self.variant] is not got:
            raise SwitchingError(f"plane section is {got.value}, not {self.variant}")

    @property
    def n(self) -> int:
        return self.geometry.n

    @property
    def q(self) -> int:
        return self.geometry.q

    def plane_section_size(self) -> int:
        return len(self.geometry.intersection(self.plane))

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "gram": self.geometry.gram.tolist(),
                "gram_id": self.geometry.gram_id, "P": int(self.P), "x1": int(self.x1),
                "x2": int(self.x2), "variant": self.variant}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d: dict) -> SwitchingConfig:
        H = hermitian_geometry(d["n"], d["q"], np.array(d["gram"]), d.get("gram_id"))
        return cls(H, d["P"], d["x1"], d["x2"], d["variant"])


def tangent_lines_at(H: HermitianGeometry, P: int) -> list[int]:
    """Tangent lines at P, each named by its lowest point other than P (ascending)."""
    S = H.space
    perp = H.polar_of_point(P)
    cand = S.points_of(perp)
    cand = cand[~H.absolute[cand]]
    seen = np.zeros(S.n_points, dtype=bool)
    out = []
    for x in cand:
        if seen[x]:
            continue
        pts = S.points_of(S.line(P, int(x)))
        seen[pts] = True
        out.append(int(x))
    return out


def choose_config(n: int, q: int, variant: str, gram=None,
                  geometry: HermitianGeometry | None = None) -> SwitchingConfig:
    """Lowest P on H, then the lexicographically lowest pair of tangent lines at P
    whose plane meets H as ``variant`` requires."""
    if n < 4:
        raise ValueError("switching needs n >= 4")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {sorted(VARIANTS)}")
    H = geometry or hermitian_geometry(n, q, gram)
    S = H.space
    want = VARIANTS[variant]
    P = int(H.point_set[0])
    lines = tangent_lines_at(H, P)
    for i, a in enumerate(lines):
        for b in lines[i + 1:]:
            plane = S.span([P, a, b])
            if H.classify_plane_section(plane) is want:
                return SwitchingConfig(H, P, a, b, variant)
    raise SwitchingError(f"no {variant} configuration at P={P}")


@dataclass
class SwitchingSets:
    """Vertex-index sets (indices into the graph, not point indices)."""

    l1: np.ndarray
    l2: np.ndarray
    A: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    D: np.ndarray

    def sizes(self) -> dict[str, int]:
        return {"A": len(self.A), "A1": len(self.A1), "A2": len(self.A2), "D": len(self.D)}

    def copy(self) -> SwitchingSets:
        return SwitchingSets(*(x.copy() for x in (self.l1, self.l2, self.A, self.A1, self.A2, self.D)))


def expected_sizes(q: int, variant: str) -> dict[str, int]:
    """|A|, |A1| = |A2| for n = 4."""
    if variant == "pencil":
        a, a1 = q * q * (q + 1) ** 2, q * q * (q + 1) * (q * q - q - 2)
    else:
        a, a1 = 2 * q * q * (q * q - 1), q**3 * (q * q - q - 1)
    return {"A": a, "A1": a1, "A2": a1}


def _sets_from_rows(G: Graph, l1: np.ndarray, l2: np.ndarray) -> SwitchingSets:
    n = G.n_vertices
    c1 = G.adj[l1].all(axis=0)
    c2 = G.adj[l2].all(axis=0)
    in1 = np.zeros(n, dtype=bool)
    in1[l1] = True
    in2 = np.zeros(n, dtype=bool)
    in2[l2] = True
    A = c1 & c2
    A1 = c1 & ~A & ~in2
    A2 = c2 & ~A & ~in1
    D = ~(in1 | in2)
    return SwitchingSets(l1, l2, *(np.nonzero(m)[0] for m in (A, A1, A2, D)))


def geometric_sets(cfg: SwitchingConfig) -> tuple[np.ndarray, np.ndarray]:
    """Point sets covered by planes through each switching line that meet H in a line.

    A u A1 (resp. A u A2) should be the non-absolute points of these planes off
    both switching lines.
    """
    H = cfg.geometry
    S = H.space
    out = []
    for L, ell in ((cfg.line1, cfg.ell1), (cfg.line2, cfg.ell2)):
        covered = np.zeros(S.n_points, dtype=bool)
        covered[S.points_of(L)] = True
        hit = np.zeros(S.n_points, dtype=bool)
        for x in range(S.n_points):
            if covered[x]:
                continue
            sigma = S.span([L, S.span([x])])
            pts = S.points_of(sigma)
            covered[pts] = True
            if H.classify_plane_section(sigma) is PlaneSection.LINE:
                hit[pts] = True
        hit[cfg.ell1] = False
        hit[cfg.ell2] = False
        hit &= ~H.absolute
        out.append(np.nonzero(hit)[0])
    return out[0], out[1]


def compute_sets(G: Graph, cfg: SwitchingConfig, cross_check: bool = True) -> SwitchingSets:
    """A, A1, A2 by intersecting neighbourhoods.

    With ``cross_check`` (G must be NU on cfg's geometry) the sets are
    compared against the plane description, checked to lie in the polar
    hyperplane of P and, for n = 4, against the closed-form sizes.
    """
    l1 = G.vertices_of_labels(cfg.ell1)
    l2 = G.vertices_of_labels(cfg.ell2)
    sets = _sets_from_rows(G, l1, l2)
    if not cross_check:
        return sets
    H = cfg.geometry
    lab = G.labels
    perp = H.polar_of_point(cfg.P)
    for name in ("A", "A1", "A2"):
        pts = lab[getattr(sets, name)]
        inside = H.space.contains(perp, pts) if len(pts) else np.ones(0, bool)
        if not np.all(inside):
            raise SwitchingError(f"{name} leaves the polar hyperplane of P",
                                 witness=int(pts[~inside][0]))
    g1, g2 = geometric_sets(cfg)
    c1 = np.union1d(lab[sets.A], lab[sets.A1])
    c2 = np.union1d(lab[sets.A], lab[sets.A2])
    if not (np.array_equal(c1, g1) and np.array_equal(c2, g2)):
        diff = np.setxor1d(c1, g1)
        raise SwitchingError("graph and plane descriptions of A u A_i disagree",
                             witness=int(diff[0]) if len(diff) else None)
    # every set is a union of tangent lines at P, minus P
    for name in ("A", "A1", "A2"):
        pts = set(lab[getattr(sets, name)].tolist())
        for x in sorted(pts):
            line = set(H.space.points_of(H.space.line(cfg.P, x)).tolist()) - {cfg.P}
            if not line <= pts:
                raise SwitchingError(f"{name} is not a union of lines through P", witness=x)
    if cfg.n == 4:
        want = expected_sizes(cfg.q, cfg.variant)
        got = sets.sizes()
        for k, v in want.items():
            if got[k] != v:
                raise SwitchingError(f"|{k}| = {got[k]}, expected {v}", witness=got)
    else:
        log.info("n=%d switching set sizes: %s", cfg.n, sets.sizes())
    return sets


@dataclass
class WQHReport:
    ok: bool
    ell_size: int
    ell_degree: int
    union_degree: int
    d_values: list[int] = field(default_factory=list)  # |N(x) & l1| over x in D \ (A1 u A2)
    violations: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "ell_size": self.ell_size, "ell_degree": self.ell_degree,
                "union_degree": self.union_degree, "d_values": self.d_values,
                "violations": self.violations}


def verify_wqh_hypotheses(G: Graph, cfg: SwitchingConfig, sets: SwitchingSets,
                          strict: bool = True) -> WQHReport:
    """Hypotheses of the switching theorem, and agreement of the switched set with A1 u A2."""
    adj = G.adj
    l1, l2 = sets.l1, sets.l2
    viol: list[dict] = []
    d1 = adj[np.ix_(l1, l1)].sum(axis=1)
    d2 = adj[np.ix_(l2, l2)].sum(axis=1)
    u = np.concatenate([l1, l2])
    du = adj[np.ix_(u, u)].sum(axis=1)
    if len(l1) != len(l2):
        viol.append({"kind": "ell_sizes", "values": [len(l1), len(l2)]})
    for name, deg in (("ell1", d1), ("ell2", d2), ("ell_union", du)):
        if len(set(deg.tolist())) > 1:
            viol.append({"kind": f"{name}_not_regular", "values": sorted(set(deg.tolist()))})
    if len(d1) and len(d2) and d1[0] != d2[0]:
        viol.append({"kind": "ell_degrees_differ", "values": [int(d1[0]), int(d2[0])]})
    D = sets.D
    n1 = adj[np.ix_(D, l1)].sum(axis=1)
    n2 = adj[np.ix_(D, l2)].sum(axis=1)
    full1 = (n1 == len(l1)) & (n2 == 0)
    full2 = (n2 == len(l2)) & (n1 == 0)
    bad = np.nonzero(~((n1 == n2) | full1 | full2))[0]
    if len(bad):
        x = int(D[bad[0]])
        viol.append({"kind": "dichotomy", "witness": x, "values": [int(n1[bad[0]]), int(n2[bad[0]])]})
    switched = np.sort(D[full1 | full2])
    declared = np.sort(np.concatenate([sets.A1, sets.A2]))
    if not np.array_equal(switched, declared):
        x = int(np.setxor1d(switched, declared)[0])
        viol.append({"kind": "switch_set_mismatch", "witness": x})
    rest = ~(full1 | full2)
    d_values = sorted(set(n1[rest].tolist()))
    rep = WQHReport(not viol, len(l1), int(d1[0]) if len(d1) else 0,
                    int(du[0]) if len(du) else 0, d_values, viol)
    if strict and viol:
        raise SwitchingError(f"switching hypotheses fail: {viol[0]}", witness=viol[0])
    return rep


def apply_switch(G: Graph, cfg: SwitchingConfig, sets: SwitchingSets) -> Graph:
    """Swap the l1 and l2 neighbourhoods of every vertex of A1 u A2.

    On G each x in A1 is joined to all of l1 and none of l2 (A2 the other way
    round), so this is the five-case rule: l1 trades A1 for A2 and l2 trades A2
    for A1.  Reading the side from the current graph rather than from the set
    names makes a second application with the same sets undo the first.
    """
    n = G.n_vertices
    adj = G.adj
    new = adj.copy()
    m = {k: np.zeros(n, dtype=bool) for k in ("l1", "l2", "A1", "A2")}
    for k in m:
        m[k][getattr(sets, k)] = True
    if sum(x.astype(int) for x in m.values()).max() > 1:
        raise SwitchingError("switching sets overlap")
    l1, l2 = sets.l1, sets.l2
    for x in np.concatenate([sets.A1, sets.A2]):
        on1, on2 = adj[x, l1], adj[x, l2]
        if not ((on1.all() and not on2.any()) or (on2.all() and not on1.any())):
            raise SwitchingError("vertex to switch is not joined to exactly one whole line",
                                 witness=int(x))
        new[x, l1], new[x, l2] = on2, on1
        new[l1, x], new[l2, x] = on2, on1
    if not np.array_equal(new, new.T):
        i, j = np.argwhere(new != new.T)[0]
        raise SwitchingError("switch is inconsistent between endpoints", witness=(int(i), int(j)))
    name = {"pencil": "G'", "line": "G''"}[cfg.variant] + f"{cfg.n}(q={cfg.q})"
    return Graph(new, G.labels, name=name, check=False)


@dataclass
class SwitchedBuild:
    base: Graph
    switched: Graph
    config: SwitchingConfig
    sets: SwitchingSets
    report: WQHReport


def build_switched(n: int, q: int, variant: str, gram=None, parts: bool = False):
    """G' (pencil) or G'' (line): choose_config, compute_sets, verify, apply_switch."""
    if n < 4:
        raise ValueError("switching needs n >= 4")
    H = hermitian_geometry(n, q, gram)
    cfg = choose_config(n, q, variant, geometry=H)
    G = build_nu(n, q, geometry=H)
    sets = compute_sets(G, cfg)
    rep = verify_wqh_hypotheses(G, cfg, sets)
    G2 = apply_switch(G, cfg, sets)
    if parts:
        return SwitchedBuild(G, G2, cfg, sets, rep)
    return G2


# -- the special triple -----------------------------------------------------------

@dataclass
class SpecialTriple:
    u: int  # vertex indices
    u1: int
    u2: int
    T: int  # point index of the tangency point of t
    t_points: np.ndarray
    counts: dict[str, int]  # |t meet A|, |t meet A1|, |t meet A2|

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.u, self.u1, self.u2)


def special_triples(G: Graph, cfg: SwitchingConfig, sets: SwitchingSets, limit: int = 1) -> list[SpecialTriple]:
    """Triangles (u, u1, u2) with u on l1 and u1, u2 in A on a tangent line t
    through u inside the polar hyperplane of P but not inside the plane of the
    switching lines, and (pencil case) the tangency point of t off the Baer subline of u, u1, u2."""
    if cfg.n != 4:
        raise ValueError("the special triple is defined for n = 4")
    H = cfg.geometry
    S = H.space
    lab = G.labels
    perp = H.polar_of_point(cfg.P)
    inA = np.zeros(S.n_points, dtype=bool)
    inA[lab[sets.A]] = True
    inA1 = np.zeros(S.n_points, dtype=bool)
    inA1[lab[sets.A1]] = True
    inA2 = np.zeros(S.n_points, dtype=bool)
    inA2[lab[sets.A2]] = True
    line1 = set(S.points_of(cfg.line1).tolist())
    out = []
    for uv in sets.l1:
        u = int(lab[uv])
        seen = set(line1)
        for y in S.points_of(perp):
            y = int(y)
            if y in seen:
                continue
            t = S.line(u, y)
            pts = S.points_of(t)
            seen.update(pts.tolist())
            if t in cfg.plane or H.classify_line(t) is not LineType.TANGENT:
                continue
            T = int(pts[H.absolute[pts]][0])
            onA = pts[inA[pts]]
            counts = {"A": len(onA), "A1": int(inA1[pts].sum()), "A2": int(inA2[pts].sum())}
            for i in range(len(onA)):
                for j in range(i + 1, len(onA)):
                    b = baer_subline(S, cfg.q, u, int(onA[i]), int(onA[j]))
                    if T in b.points:
                        continue
                    vs = G.vertices_of_labels(np.array([onA[i], onA[j]]))
                    out.append(SpecialTriple(int(uv), int(vs[0]), int(vs[1]), T, pts, counts))
                    if len(out) >= limit:
                        return out
    return out


def expected_special_counts(q: int, variant: str) -> dict[str, int]:
    """|t meet A|, |t meet A1|, |t meet A2| for the special tangent line t."""
    if variant == "pencil":
        return {"A": q + 1, "A1": q * q - q - 2, "A2": 0}
    return {"A": q, "A1": q * q - q - 1, "A2": 0}
