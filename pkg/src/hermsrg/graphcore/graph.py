"""Dense undirected graphs: a bool adjacency matrix plus packed 64-bit rows."""
from __future__ import annotations

import functools
import hashlib
from typing import Callable, Sequence

import numpy as np


class GraphError(ValueError):
    """Adjacency is not symmetric / irreflexive, or similar misuse."""


def pack_rows(adj: np.ndarray) -> np.ndarray:
    """Bool matrix (n, n) -> uint64 words (n, ceil(n/64)); bit j%64 of word j//64."""
    n = adj.shape[1]
    words = (n + 63) // 64
    padded = np.zeros((adj.shape[0], words * 64), dtype=bool)
    padded[:, :n] = adj
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).copy()


def unpack_rows(bits: np.ndarray, n: int) -> np.ndarray:
    return np.unpackbits(bits.view(np.uint8), axis=1, bitorder="little", count=n).astype(bool)


class Graph:
    """Immutable simple graph on vertices 0..n-1.

    ``labels[i]`` optionally records which geometric object (usually a
    point index of some projective space) vertex i stands for.
    """

    def __init__(self, adjacency: np.ndarray, labels: Sequence[int] | None = None,
                 name: str = "", check: bool = True):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphError("adjacency must be a square matrix")
        if check:
            if np.any(np.diagonal(adj)):
                v = int(np.nonzero(np.diagonal(adj))[0][0])
                raise GraphError(f"loop at vertex {v}")
            bad = np.argwhere(adj != adj.T)
            if len(bad):
                i, j = bad[0]
                raise GraphError(f"asymmetric adjacency at ({i}, {j})")
        adj.setflags(write=False)
        self.adj = adj
        if labels is not None:
            labels = np.asarray(labels, dtype=np.int64)
            if labels.shape != (len(adj),):
                raise GraphError("one label per vertex expected")
            labels.setflags(write=False)
        self.labels = labels
        self.name = name

    @property
    def n_vertices(self) -> int:
        return self.adj.shape[0]

    def __len__(self):
        return self.adj.shape[0]

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<Graph{tag} v={self.n_vertices} e={self.n_edges}>"

    @functools.cached_property
    def bits(self) -> np.ndarray:
        b = pack_rows(self.adj)
        b.setflags(write=False)
        return b

    @functools.cached_property
    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    @property
    def n_edges(self) -> int:
        return int(self.degrees.sum()) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return np.nonzero(self.adj[v])[0]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def vertex_of_label(self, label: int) -> int:
        if self.labels is None:
            raise GraphError("graph carries no labels")
        hit = np.nonzero(self.labels == label)[0]
        if len(hit) == 0:
            raise KeyError(label)
        return int(hit[0])

    def vertices_of_labels(self, labels) -> np.ndarray:
        if self.labels is None:
            raise GraphError("graph carries no labels")
        order = np.argsort(self.labels)
        pos = np.searchsorted(self.labels[order], labels)
        pos = np.minimum(pos, len(order) - 1)
        found = order[pos]
        if np.any(self.labels[found] != labels):
            raise KeyError("label not present")
        return found

    def permuted(self, perm: np.ndarray) -> Graph:
        """Graph with vertex v renamed perm[v]."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        adj = self.adj[np.ix_(inv, inv)]
        labels = None if self.labels is None else self.labels[inv]
        return Graph(adj, labels, self.name, check=False)

    def edge_digest(self) -> str:
        """sha256 of the packed upper triangle; equal iff identical edge sets."""
        iu = np.triu_indices(self.n_vertices, 1)
        return hashlib.sha256(np.packbits(self.adj[iu]).tobytes()).hexdigest()

    def same_edges(self, other: Graph) -> bool:
        return self.adj.shape == other.adj.shape and bool(np.array_equal(self.adj, other.adj))


def build_graph(n_vertices: int, adjacency_predicate: Callable[[int, int], bool] | np.ndarray,
                labels=None, name: str = "") -> Graph:
    """Graph from a pairwise predicate (or an already-evaluated bool matrix).

    The predicate is evaluated on every ordered pair, so asymmetric
    predicates are caught rather than silently symmetrised.
    """
    if callable(adjacency_predicate):
        adj = np.zeros((n_vertices, n_vertices), dtype=bool)
        for i in range(n_vertices):
            for j in range(n_vertices):
                if i != j:
                    adj[i, j] = bool(adjacency_predicate(i, j))
                elif adjacency_predicate(i, i):
                    raise GraphError(f"predicate is reflexive at {i}")
    else:
        adj = np.asarray(adjacency_predicate, dtype=bool)
        if adj.shape != (n_vertices, n_vertices):
            raise GraphError("adjacency shape does not match n_vertices")
    return Graph(adj, labels, name)


def from_edges(n: int, edges) -> Graph:
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        adj[u, v] = adj[v, u] = True
    return Graph(adj)


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(~np.eye(n, dtype=bool))
