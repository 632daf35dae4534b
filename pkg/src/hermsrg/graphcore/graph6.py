"""graph6 encoding (upper triangle, column by column, 6 bits per byte + 63)."""
from __future__ import annotations

import numpy as np

from .graph import Graph

HEADER = b">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_n(n: int) -> bytes:
    if n < 0 or n >= 2**36:
        raise Graph6Error(f"vertex count {n} out of range")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty input")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte length header")
        body, off = data[2:8], 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte length header")
        body, off = data[1:4], 4
    n = 0
    for b in body:
        if not 63 <= b <= 126:
            raise Graph6Error("bad byte in length header")
        n = (n << 6) | (b - 63)
    return n, off


def _upper_bits(adj: np.ndarray) -> np.ndarray:
    # order (0,1), (0,2), (1,2), (0,3), ... : row of tril indices is the column j
    j, i = np.tril_indices(len(adj), -1)
    return adj[i, j]


def export_graph6(G: Graph, header: bool = False) -> bytes:
    bits = _upper_bits(G.adj)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=bool)]).reshape(-1, 6)
    vals = bits.astype(np.uint8) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) + 63
    return (HEADER if header else b"") + _encode_n(G.n_vertices) + vals.astype(np.uint8).tobytes()


def import_graph6(data: bytes) -> Graph:
    """Inverse of export_graph6.  One trailing newline is tolerated (file form)."""
    if isinstance(data, str):
        data = data.encode("ascii")
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if data.endswith(b"\n"):
        data = data[:-1]
    n, off = _decode_n(data)
    if n < 0:
        raise Graph6Error("bad length byte")
    m = n * (n - 1) // 2
    need = (m + 5) // 6
    body = np.frombuffer(data[off:], dtype=np.uint8)
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"{len(body) - need} trailing bytes")
    if np.any((body < 63) | (body > 126)):
        raise Graph6Error("data byte out of range")
    bits = np.unpackbits((body - 63)[:, None], axis=1)[:, 2:].ravel()
    if np.any(bits[m:]):
        raise Graph6Error("nonzero padding bits")
    adj = np.zeros((n, n), dtype=bool)
    j, i = np.tril_indices(n, -1)
    adj[i, j] = bits[:m]
    adj |= adj.T
    return Graph(adj, check=False)
