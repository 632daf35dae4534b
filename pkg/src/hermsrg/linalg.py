"""Small dense linear algebra over a FieldTable (matrices of element indices)."""
from __future__ import annotations

import numpy as np

from .gf import FieldTable


def fmatmul(F: FieldTable, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Matrix product over F; A is (..., k) and B is (k, m)."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape[-1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    add, mul = F.add_table, F.mul_table
    acc = np.zeros(A.shape[:-1] + (B.shape[1],), dtype=add.dtype)
    for i in range(B.shape[0]):
        acc = add[acc, mul[A[..., i, None], B[i]]]
    return acc


def fdot(F: FieldTable, A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise dot products of A (..., k) with a vector b (k,)."""
    return fmatmul(F, A, np.asarray(b)[:, None])[..., 0]


def rref(F: FieldTable, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form with zero rows dropped, and the pivot columns."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("rref expects a matrix")
    rows, cols = M.shape
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = mul[M[r], F.inv_table[M[r, c]]]
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = add[M[i], mul[neg[M[i, c]], M[r]]]
        pivots.append(c)
        r += 1
    return M[:r].astype(F.add_table.dtype), pivots


def rank(F: FieldTable, M: np.ndarray) -> int:
    return len(rref(F, M)[1])


def nullspace(F: FieldTable, M: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0}."""
    M = np.asarray(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=F.add_table.dtype)
    R, pivots = rref(F, M)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=F.add_table.dtype)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = F.neg_table[R[i, f]]
    return basis


def det(F: FieldTable, M: np.ndarray) -> int:
    """Determinant by elimination (index of the result)."""
    M = np.array(M, dtype=np.int64, copy=True)
    n = M.shape[0]
    add, mul, neg = F.add_table, F.mul_table, F.neg_table
    d = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if len(nz) == 0:
            return 0
        k = c + nz[0]
        if k != c:
            M[[c, k]] = M[[k, c]]
            d = int(neg[d])
        piv = int(M[c, c])
        d = int(mul[d, piv])
        inv = int(F.inv_table[piv])
        for i in range(c + 1, n):
            if M[i, c]:
                f = int(mul[neg[M[i, c]], inv])
                M[i] = add[M[i], mul[f, M[c]]]
    return d


def inverse(F: FieldTable, M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    aug = np.concatenate([np.asarray(M), np.eye(n, dtype=np.int64)], axis=1)
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def transpose_conj(F: FieldTable, M: np.ndarray, q: int) -> np.ndarray:
    """Entrywise x -> x^q of the transpose."""
    return F.power_map(q)[np.asarray(M).T]
