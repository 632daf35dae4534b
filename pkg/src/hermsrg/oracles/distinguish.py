"""Invariant-based separation of two graphs with the same SRG parameters.

Three invariants are tried in order: the values of |N(a) & N(b) & N(c)| over
adjacent triples, the census of maximal cliques by size, and the joint colour
refinement seeded with per-vertex triangle profiles.  The first one that
separates the graphs is returned as a certificate that ``check_certificate``
can re-verify from the graphs alone.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from ..graphcore import census as _census
from ..graphcore.census import BudgetExceeded, find_triangle_with_value, triple_census
from ..graphcore.cliques import is_maximal_clique, maximal_cliques
from ..graphcore.graph import Graph
from ..graphcore.iso import _refine

log = logging.getLogger(__name__)

METHODS = ("triples", "cliques", "refinement")
EXACT_TRIPLES_VERTICES = 200


@dataclass
class Certificate:
    """Why two graphs differ.

    ``kind`` is one of ``triple_value`` (a triangle of graph ``holder`` whose
    common-neighbour count never occurs in the other graph), ``triple_frequencies``,
    ``clique_size`` (a maximal clique of a size absent from the other graph),
    ``clique_frequencies`` or ``refinement``.
    """

    kind: str
    holder: int | None = None
    witness: tuple[int, ...] | None = None
    value: int | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "holder": self.holder,
                "witness": list(self.witness) if self.witness is not None else None,
                "value": self.value, "details": self.details}


@dataclass
class DistinguishResult:
    certificate: Certificate | None
    tried: list[str]
    seconds: float
    notes: list[str] = field(default_factory=list)

    @property
    def distinguished(self) -> bool:
        return self.certificate is not None

    @property
    def verdict(self) -> str:
        return "non-isomorphic" if self.distinguished else "indistinguishable"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "tried": self.tried,
                "certificate": self.certificate.to_json() if self.certificate else None,
                "notes": self.notes, "seconds": round(self.seconds, 3)}


def distinguish(G1: Graph, G2: Graph, methods=METHODS, budget_seconds: float = 600.0,
                hints: dict[int, list[tuple[int, int, int]]] | None = None,
                clique_budget: float | None = 120.0) -> DistinguishResult:
    """Return the first separating invariant, or an indistinguishable verdict.

    ``hints`` maps 1 or 2 to triangles of that graph worth checking first (for
    instance the special triple of a switched graph).  A triple value only
    certifies when the other graph's census is exhaustive.
    """
    t0 = time.perf_counter()
    if G1.n_vertices != G2.n_vertices:
        raise ValueError("graphs have different orders")
    graphs = {1: G1, 2: G2}
    tried: list[str] = []
    notes: list[str] = []
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
        tried.append(m)
        left = budget_seconds - (time.perf_counter() - t0)
        if m == "triples":
            cert = _by_triples(graphs, hints or {}, left, notes)
        elif m == "cliques":
            cert = _by_cliques(graphs, clique_budget, notes)
        else:
            cert = _by_refinement(G1, G2)
        if cert is not None:
            if not check_certificate(G1, G2, cert, full=False):
                raise AssertionError(f"internal error: certificate {cert.kind} does not re-check")
            return DistinguishResult(cert, tried, time.perf_counter() - t0, notes)
    return DistinguishResult(None, tried, time.perf_counter() - t0, notes)


def _full_census(G: Graph, budget: float, notes: list[str]):
    if G.n_vertices <= EXACT_TRIPLES_VERTICES:
        return triple_census(G)
    try:
        return triple_census(G, budget_seconds=max(budget, 0.0))
    except BudgetExceeded as e:
        notes.append(f"triple census skipped: {e}")
        return None


def _by_triples(graphs, hints, budget, notes) -> Certificate | None:
    t0 = time.perf_counter()
    full = {}
    for h in (1, 2):
        other = 3 - h
        if not hints.get(h):
            continue
        if other not in full:
            full[other] = _full_census(graphs[other], budget - (time.perf_counter() - t0), notes)
        ref = full[other]
        if ref is None:
            continue
        for trip, val in triple_census(graphs[h], list(hints[h])).samples:
            if val not in ref.counts:
                return Certificate("triple_value", h, tuple(trip), val,
                                   {"other_values": sorted(ref.counts), "other_exhaustive": True})
    for h in (1, 2):
        if h not in full:
            full[h] = _full_census(graphs[h], budget - (time.perf_counter() - t0), notes)
    c1, c2 = full[1], full[2]
    if c1 is None or c2 is None:
        return None
    for h, mine, theirs in ((1, c1, c2), (2, c2, c1)):
        extra = sorted(set(mine.counts) - set(theirs.counts))
        if extra:
            trip = find_triangle_with_value(graphs[h], extra[0])
            return Certificate("triple_value", h, trip, extra[0],
                               {"other_values": sorted(theirs.counts), "other_exhaustive": True,
                                "values": [c1.to_json()["counts"], c2.to_json()["counts"]]})
    if c1.counts != c2.counts:
        return Certificate("triple_frequencies", details={"values": [c1.to_json()["counts"],
                                                                     c2.to_json()["counts"]]})
    return None


def _by_cliques(graphs, budget, notes) -> Certificate | None:
    cen = {}
    for h in (1, 2):
        try:
            cen[h] = maximal_cliques(graphs[h], budget_seconds=budget)
        except BudgetExceeded as e:
            notes.append(f"clique census skipped: {e}")
            return None
    for h in (1, 2):
        extra = sorted(set(cen[h].counts) - set(cen[3 - h].counts))
        if extra:
            w = cen[h].witnesses[extra[0]][0]
            return Certificate("clique_size", h, tuple(w), extra[0],
                               {"counts": [cen[1].to_json()["counts"], cen[2].to_json()["counts"]]})
    if cen[1].counts != cen[2].counts:
        return Certificate("clique_frequencies",
                           details={"counts": [cen[1].to_json()["counts"], cen[2].to_json()["counts"]]})
    return None


def _by_refinement(G1: Graph, G2: Graph) -> Certificate | None:
    c1, c2 = _census.joint_triangle_profiles(G1, G2)
    r1, r2, ok = _refine(G1.adj.astype(np.float32), G2.adj.astype(np.float32), c1, c2)
    if ok:
        return None
    h1 = np.bincount(r1).tolist()
    h2 = np.bincount(r2, minlength=len(h1)).tolist()
    return Certificate("refinement", details={"histograms": [h1, h2]})


def check_certificate(G1: Graph, G2: Graph, cert: Certificate, full: bool = True) -> bool:
    """Re-verify a certificate from the graphs alone.

    The witness of a triple certificate costs O(v/64) words and that of a
    clique certificate O(|S|^2).  With ``full`` the absence of the value (or
    clique size) in the other graph is re-established by exhaustive search too.
    """
    graphs = {1: G1, 2: G2}
    if cert.kind == "triple_value":
        G, other = graphs[cert.holder], graphs[3 - cert.holder]
        a, b, c = cert.witness
        if not (G.has_edge(a, b) and G.has_edge(a, c) and G.has_edge(b, c)):
            return False
        if _census.common_neighbors(G, [a, b, c])[0] != cert.value:
            return False
        return not full or find_triangle_with_value(other, cert.value) is None
    if not full:
        return True
    if cert.kind == "triple_frequencies":
        return triple_census(G1).counts != triple_census(G2).counts
    if cert.kind == "clique_size":
        G, other = graphs[cert.holder], graphs[3 - cert.holder]
        if len(cert.witness) != cert.value or not is_maximal_clique(G, cert.witness):
            return False
        return not full or maximal_cliques(other, size_filter=[cert.value]).counts.get(cert.value, 0) == 0
    if cert.kind == "clique_frequencies":
        return maximal_cliques(G1).counts != maximal_cliques(G2).counts
    if cert.kind == "refinement":
        return _by_refinement(G1, G2) is not None
    return False
