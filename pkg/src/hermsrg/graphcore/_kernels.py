"""numba kernels over packed uint64 adjacency rows."""
import os

import numba as nb
import numpy as np

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the system TBB is too old for numba; skip the noisy probe
    nb.config.THREADING_LAYER = "workqueue"


@nb.njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@nb.njit(cache=True)
def _triangles_from(bits, starts, n, hist):
    """Add to hist the common-neighbour counts of all triangles i<j<k with i in starts."""
    W = bits.shape[1]
    c = np.empty(W, dtype=np.uint64)
    for i in starts:
        for wj in range(i // 64, W):
            word = bits[i, wj]
            if wj == i // 64:
                word &= ~np.uint64(0) << np.uint64(i % 64) << np.uint64(1) if i % 64 < 63 else np.uint64(0)
            while word:
                low = word & (~word + np.uint64(1))
                j = wj * 64 + int(_popcount(low - np.uint64(1)))
                word ^= low
                for w in range(W):
                    c[w] = bits[i, w] & bits[j, w]
                for wk in range(j // 64, W):
                    kw = c[wk]
                    if wk == j // 64:
                        kw &= ~np.uint64(0) << np.uint64(j % 64) << np.uint64(1) if j % 64 < 63 else np.uint64(0)
                    while kw:
                        lowk = kw & (~kw + np.uint64(1))
                        k = wk * 64 + int(_popcount(lowk - np.uint64(1)))
                        kw ^= lowk
                        cnt = 0
                        for w in range(W):
                            cnt += _popcount(c[w] & bits[k, w])
                        hist[cnt] += 1


@nb.njit(cache=True, parallel=True)
def triangle_histogram(bits, n, maxval, n_chunks):
    hist = np.zeros((n_chunks, maxval + 1), dtype=np.int64)
    for t in nb.prange(n_chunks):
        starts = np.arange(t, n, n_chunks)
        _triangles_from(bits, starts, n, hist[t])
    return hist.sum(axis=0)


@nb.njit(cache=True)
def triple_counts(bits, a, b, c):
    out = np.empty(len(a), dtype=np.int64)
    W = bits.shape[1]
    for t in range(len(a)):
        cnt = 0
        for w in range(W):
            cnt += _popcount(bits[a[t], w] & bits[b[t], w] & bits[c[t], w])
        out[t] = cnt
    return out


@nb.njit(cache=True)
def find_triangle(bits, n, value):
    """First triangle i<j<k (lexicographic) whose common-neighbour count equals value."""
    W = bits.shape[1]
    c = np.empty(W, dtype=np.uint64)
    for i in range(n):
        for j in range(i + 1, n):
            if not (bits[i, j // 64] >> np.uint64(j % 64)) & np.uint64(1):
                continue
            for w in range(W):
                c[w] = bits[i, w] & bits[j, w]
            for k in range(j + 1, n):
                if not (c[k // 64] >> np.uint64(k % 64)) & np.uint64(1):
                    continue
                cnt = 0
                for w in range(W):
                    cnt += _popcount(c[w] & bits[k, w])
                if cnt == value:
                    return np.array([i, j, k], dtype=np.int64)
    return np.array([-1, -1, -1], dtype=np.int64)
