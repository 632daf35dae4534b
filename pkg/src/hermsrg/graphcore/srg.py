"""Strongly regular graph checks and the parameter-derived spectrum."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .graph import Graph


class NotStronglyRegular(AssertionError):
    """check_srg failed; ``witness`` says where."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class DisconnectedGraph(ValueError):
    def __init__(self, n_components: int, witness: tuple[int, int]):
        super().__init__(f"graph has {n_components} components; e.g. {witness} are separated")
        self.n_components = n_components
        self.witness = witness


@dataclass(frozen=True)
class SRGParams:
    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        if min(self.v, self.k, self.lam, self.mu) < 0:
            raise ValueError("parameters must be nonnegative")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def feasible(self) -> bool:
        return self.k * (self.k - self.lam - 1) == (self.v - self.k - 1) * self.mu

    def __iter__(self):
        return iter(self.as_tuple())

    def __repr__(self):
        return f"SRGParams{self.as_tuple()}"


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues k, r, s with multiplicities 1, f, g.

    r and s are exact: either integers or (for conference graphs) the pair
    ``(a, b, c)`` meaning (a + b*sqrt(c)) / 2, kept as strings via ``pretty``.
    """

    k: int
    r: float
    s: float
    f: int
    g: int
    exact_r: str
    exact_s: str


def srg_spectrum(p: SRGParams) -> SpectrumReport:
    if not p.feasible():
        raise ValueError(f"{p} violates k(k-lam-1) = (v-k-1)mu")
    v, k, lam, mu = p
    b = lam - mu
    disc = b * b + 4 * (k - mu)
    root = math.isqrt(disc)
    num = 2 * k + (v - 1) * b
    if root * root == disc:
        r, s = (b + root) // 2, (b - root) // 2
        if (b + root) % 2:
            raise ValueError(f"{p}: eigenvalues are not integers")
        if r == s:
            raise ValueError(f"{p}: degenerate spectrum")
        g = Fraction(k + (v - 1) * r, r - s)
        f = Fraction(v - 1) - g
        if f.denominator != 1 or g.denominator != 1 or f < 0 or g < 0:
            raise ValueError(f"{p}: non-integral multiplicities f={f}, g={g}")
        return SpectrumReport(k, float(r), float(s), int(f), int(g), str(r), str(s))
    # irrational eigenvalues force the conference case: f = g
    if num != 0 or (v - 1) % 2:
        raise ValueError(f"{p}: irrational eigenvalues with unequal multiplicities")
    f = g = (v - 1) // 2
    r = (b + math.sqrt(disc)) / 2
    s = (b - math.sqrt(disc)) / 2
    return SpectrumReport(k, r, s, f, g, f"({b}+sqrt({disc}))/2", f"({b}-sqrt({disc}))/2")


def nu_params(n: int, q: int) -> SRGParams:
    """Parameters of the tangent graph on non-absolute points of PG(n, q^2)."""
    if n == 2:
        return gamma_u_params(q)
    if n < 2:
        raise ValueError("n must be at least 2")
    e = (-1) ** (n + 1)
    v = q**n * (q ** (n + 1) - e) // (q + 1)
    k = (q**n + e) * (q ** (n - 1) - e)
    lam = q ** (2 * n - 3) * (q + 1) - e * q ** (n - 1) * (q - 1) - 2
    mu = q ** (n - 2) * (q + 1) * (q ** (n - 1) - e)
    return SRGParams(v, k, lam, mu)


def gamma_u_params(q: int) -> SRGParams:
    """Parameters of the graph on points off a unital of order q^2."""
    return SRGParams(q * q * (q * q - q + 1), (q + 1) * (q * q - 1), 2 * (q * q - 1), (q + 1) ** 2)


def components(G: Graph) -> tuple[int, np.ndarray]:
    return connected_components(csr_matrix(G.adj), directed=False)


def common_neighbour_matrix(G: Graph) -> np.ndarray:
    """A @ A exactly (float32 is exact below 2**24)."""
    if G.n_vertices >= 2**24:
        raise ValueError("graph too large for float32 counting")
    A = G.adj.astype(np.float32)
    return (A @ A).astype(np.int32)


def check_srg(G: Graph) -> SRGParams:
    """Parameters of G, or NotStronglyRegular / DisconnectedGraph with a witness."""
    v = G.n_vertices
    ncomp, lab = components(G)
    if ncomp > 1:
        a = 0
        b = int(np.nonzero(lab != lab[0])[0][0])
        raise DisconnectedGraph(ncomp, (a, b))
    deg = G.degrees
    k = int(deg[0])
    bad = np.nonzero(deg != k)[0]
    if len(bad):
        w = int(bad[0])
        raise NotStronglyRegular(f"not regular: deg(0)={k}, deg({w})={int(deg[w])}",
                                 {"kind": "degree", "vertices": [0, w], "values": [k, int(deg[w])]})
    if k == v - 1 or k == 0:
        raise NotStronglyRegular("complete or empty graph", {"kind": "trivial", "vertices": [], "values": []})
    M = common_neighbour_matrix(G)
    np.fill_diagonal(M, -1)
    params = {}
    for flag, name in ((True, "lam"), (False, "mu")):
        mask = G.adj if flag else ~G.adj
        mask = mask.copy()
        np.fill_diagonal(mask, False)
        vals = M[mask]
        first = int(vals[0])
        if np.any(vals != first):
            pairs = np.argwhere(mask & (M != first))
            i, j = (int(x) for x in pairs[0])
            i0, j0 = (int(x) for x in np.argwhere(mask)[0])
            raise NotStronglyRegular(
                f"{name} not constant: pair {(i0, j0)} has {first}, pair {(i, j)} has {int(M[i, j])}",
                {"kind": name, "vertices": [i0, j0, i, j], "values": [first, int(M[i, j])]})
        params[name] = first
    return SRGParams(v, k, params["lam"], params["mu"])
