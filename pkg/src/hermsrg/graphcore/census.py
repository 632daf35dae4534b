"""Common-neighbour counts of vertex sets, in particular of triangles."""
from __future__ import annotations

import logging
import os
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import Graph

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """A requested census would not fit the time budget; nothing was truncated."""


def common_neighbors(G: Graph, S) -> tuple[int, np.ndarray]:
    """|intersection of N(s), s in S| and the intersection as packed bits."""
    S = np.atleast_1d(np.asarray(S, dtype=np.int64))
    if len(S) == 0:
        raise ValueError("S must be nonempty")
    acc = np.bitwise_and.reduce(G.bits[S], axis=0)
    return int(np.bitwise_count(acc).sum()), acc


def common_neighbor_set(G: Graph, S) -> np.ndarray:
    S = np.atleast_1d(np.asarray(S, dtype=np.int64))
    return np.nonzero(np.all(G.adj[S], axis=0))[0]


@dataclass(frozen=True)
class AllAdjacentTriples:
    pass


@dataclass(frozen=True)
class SampledTriples:
    k: int
    seed: int


@dataclass(frozen=True)
class ExplicitTriples:
    triples: tuple[tuple[int, int, int], ...]


ALL = AllAdjacentTriples()


@dataclass
class TripleCensus:
    """value -> frequency of |N(a) & N(b) & N(c)| over the chosen triangles."""

    counts: dict[int, int]
    source: str
    exhaustive: bool
    n_triples: int
    seed: int | None = None
    seconds: float = 0.0
    samples: list[tuple[tuple[int, int, int], int]] = field(default_factory=list)

    @property
    def values(self) -> frozenset[int]:
        return frozenset(self.counts)

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "exhaustive": self.exhaustive,
            "n_triples": self.n_triples,
            "seed": self.seed,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
        }


def default_threads() -> int:
    return os.cpu_count() or 1


def estimated_triangles(G: Graph) -> int:
    """Exact triangle count (trace(A^3) / 6), used to cost a full census."""
    A = G.adj.astype(np.float64)
    return int(round(float(np.einsum("ij,ij->", A @ A, A)) / 6))


TRIPLES_PER_SECOND = 2.0e7  # conservative single-core rate of the kernel


def triple_census(G: Graph, source=ALL, threads: int | None = None,
                  budget_seconds: float | None = None) -> TripleCensus:
    """Histogram of common-neighbour counts of pairwise adjacent triples.

    ``source`` is ``ALL`` (every triangle, exact), ``SampledTriples(k, seed)``
    (u uniform, v uniform in N(u), w uniform in N(u) & N(v), which for an SRG is
    a uniform triangle) or ``ExplicitTriples``.
    """
    t0 = time.perf_counter()
    bits = np.ascontiguousarray(G.bits)
    n = G.n_vertices
    if isinstance(source, AllAdjacentTriples):
        threads = threads or default_threads()
        if budget_seconds is not None:
            tri = estimated_triangles(G)
            need = tri * G.bits.shape[1] / 78 / (TRIPLES_PER_SECOND * threads)
            if need > budget_seconds:
                raise BudgetExceeded(f"full census of {tri} triangles needs ~{need:.0f}s "
                                     f"> budget {budget_seconds:.0f}s")
        maxdeg = int(G.degrees.max()) if n else 0
        log.info("full triple census on %d vertices", n)
        hist = _kernels.triangle_histogram(bits, n, maxdeg, max(1, threads) * 8)
        counts = {int(i): int(c) for i, c in enumerate(hist) if c}
        return TripleCensus(counts, "all", True, int(hist.sum()), None, time.perf_counter() - t0)
    if isinstance(source, SampledTriples):
        rng = np.random.default_rng(source.seed)
        trip = []
        deg = G.degrees
        while len(trip) < source.k:
            u = int(rng.integers(n))
            if deg[u] == 0:
                continue
            nu = G.neighbors(u)
            v = int(nu[rng.integers(len(nu))])
            both = nu[G.adj[v, nu]]
            if len(both) == 0:
                continue
            w = int(both[rng.integers(len(both))])
            trip.append((u, v, w))
        census = _explicit(G, trip, bits)
        return TripleCensus(census[0], "sampled", False, len(trip), source.seed,
                            time.perf_counter() - t0, census[1][:20])
    if isinstance(source, ExplicitTriples) or isinstance(source, (list, tuple)):
        trip = list(source.triples if isinstance(source, ExplicitTriples) else source)
        for a, b, c in trip:
            if not (G.adj[a, b] and G.adj[a, c] and G.adj[b, c]):
                raise ValueError(f"{(a, b, c)} is not a triangle")
        census = _explicit(G, trip, bits)
        return TripleCensus(census[0], "explicit", False, len(trip), None,
                            time.perf_counter() - t0, census[1])
    raise TypeError(f"unknown triple source {source!r}")


def _explicit(G: Graph, trip, bits):
    if not trip:
        return {}, []
    arr = np.asarray(trip, dtype=np.int64)
    vals = _kernels.triple_counts(bits, arr[:, 0], arr[:, 1], arr[:, 2])
    counts = Counter(int(v) for v in vals)
    return dict(sorted(counts.items())), [(tuple(int(x) for x in t), int(v)) for t, v in zip(trip, vals)]


def find_triangle_with_value(G: Graph, value: int) -> tuple[int, int, int] | None:
    """Lexicographically first triangle with exactly ``value`` common neighbours."""
    t = _kernels.find_triangle(np.ascontiguousarray(G.bits), G.n_vertices, int(value))
    return None if t[0] < 0 else (int(t[0]), int(t[1]), int(t[2]))


def vertex_triangle_counters(G: Graph) -> list[Counter]:
    """For each vertex u, value -> number of triangles at u with that common-neighbour count."""
    rows = []
    bits = G.bits
    for u in range(G.n_vertices):
        nu = G.neighbors(u)
        c = Counter()
        for v in nu:
            both = nu[G.adj[v, nu]]
            both = both[both > v]
            if len(both):
                vals = _kernels.triple_counts(bits, np.full(len(both), u), np.full(len(both), v), both)
                c.update(vals.tolist())
        rows.append(c)
    return rows


def vertex_triangle_profile(G: Graph, keys=None) -> np.ndarray:
    """Per vertex, counts of incident triangles by common-neighbour value.

    Columns follow ``keys`` (default: the sorted values seen in G); pass the
    same keys for two graphs to get comparable rows.  Usable as an
    isomorphism-invariant vertex colouring.
    """
    rows = vertex_triangle_counters(G)
    if keys is None:
        keys = sorted(set().union(*rows)) if rows else []
    return np.array([[r.get(k, 0) for k in keys] for r in rows],
                    dtype=np.int64).reshape(G.n_vertices, len(keys))


def joint_triangle_profiles(G1: Graph, G2: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Vertex colours of both graphs from triangle profiles over a shared value axis."""
    r1, r2 = vertex_triangle_counters(G1), vertex_triangle_counters(G2)
    keys = sorted(set().union(*r1, *r2))
    m1 = np.array([[r.get(k, 0) for k in keys] for r in r1], dtype=np.int64).reshape(len(r1), len(keys))
    m2 = np.array([[r.get(k, 0) for k in keys] for r in r2], dtype=np.int64).reshape(len(r2), len(keys))
    _, inv = np.unique(np.concatenate([m1, m2]), axis=0, return_inverse=True)
    inv = inv.ravel()
    return inv[:len(r1)], inv[len(r1):]
