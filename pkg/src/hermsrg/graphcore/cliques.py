"""Maximal clique enumeration (Bron-Kerbosch, Tomita pivoting) on int bitsets."""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .census import BudgetExceeded
from .graph import Graph

log = logging.getLogger(__name__)


@dataclass
class CliqueCensus:
    counts: dict[int, int]
    witnesses: dict[int, list[tuple[int, ...]]] = field(default_factory=dict)
    size_filter: tuple[int, ...] | None = None
    seconds: float = 0.0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict:
        return {
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "witnesses": {str(k): [list(c) for c in v] for k, v in sorted(self.witnesses.items())},
            "size_filter": list(self.size_filter) if self.size_filter else None,
        }


def _row_int(G: Graph, v: int) -> int:
    return int.from_bytes(G.bits[v].tobytes(), "little")


def _members(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def is_maximal_clique(G: Graph, clique) -> bool:
    c = list(clique)
    adj = G.adj
    for i, a in enumerate(c):
        for b in c[i + 1:]:
            if not adj[a, b]:
                return False
    common = adj[c].all(axis=0)
    return not common.any()


def maximal_cliques(G: Graph, size_filter=None, witnesses_per_size: int = 3,
                    progress_every: float = 10.0, budget_seconds: float | None = None,
                    collect: bool = False) -> CliqueCensus:
    """Census of maximal cliques by size.

    With ``size_filter`` only those sizes are recorded, and branches that
    cannot reach the smallest requested size are pruned.  Witness cliques are
    re-checked for maximality before they are returned.  ``collect=True``
    keeps every clique of a recorded size as a witness.
    """
    t0 = time.perf_counter()
    n = G.n_vertices
    N = [_row_int(G, v) for v in range(n)]
    wanted = frozenset(size_filter) if size_filter else None
    floor = min(wanted) if wanted else 0
    counts: dict[int, int] = {}
    wit: dict[int, list[tuple[int, ...]]] = {}
    last = [t0]

    def record(R):
        s = len(R)
        if wanted is not None and s not in wanted:
            return
        counts[s] = counts.get(s, 0) + 1
        lst = wit.setdefault(s, [])
        if collect or len(lst) < witnesses_per_size:
            lst.append(tuple(sorted(R)))

    def expand(R, P, X):
        if not P:
            if not X:
                record(R)
            return
        if len(R) + P.bit_count() < floor:
            return
        PX = P | X
        best, u = -1, 0
        for w in _members(PX):
            c = (P & N[w]).bit_count()
            if c > best:
                best, u = c, w
        cand = P & ~N[u]
        for v in _members(cand):
            R.append(v)
            expand(R, P & N[v], X & N[v])
            R.pop()
            P &= ~(1 << v)
            X |= 1 << v

    done = 0
    for v in range(n):
        later = N[v] >> (v + 1) << (v + 1)
        earlier = N[v] & ((1 << v) - 1)
        expand([v], later, earlier)
        done += 1
        now = time.perf_counter()
        if now - last[0] > progress_every:
            last[0] = now
            log.info("cliques: %d/%d root vertices, %d cliques so far", done, n, sum(counts.values()))
        if budget_seconds is not None and now - t0 > budget_seconds:
            raise BudgetExceeded(f"clique search exceeded {budget_seconds}s at root {v}/{n}")
    for s, lst in wit.items():
        for c in lst:
            if not is_maximal_clique(G, c):
                raise AssertionError(f"internal error: {c} is not a maximal clique")
    return CliqueCensus(dict(sorted(counts.items())), dict(sorted(wit.items())),
                        tuple(sorted(wanted)) if wanted else None, time.perf_counter() - t0)
