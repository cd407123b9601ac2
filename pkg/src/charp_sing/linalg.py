"""Dense row reduction over a prime field.

Matrices are numpy int64 arrays holding residues in [0, p).  With p below
2^15 every intermediate product fits in 63 bits.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**15


def _as_matrix(M, p: int) -> np.ndarray:
    if p >= MAX_PRIME:
        raise OverflowError("prime too large for int64 row reduction")
    return np.array(M, dtype=np.int64, copy=True) % p


def rref(M, p: int, ncols: int = None):
    """Reduced row echelon form of ``M`` mod p.

    Only the first ``ncols`` columns are used as pivot candidates (default:
    all).  Returns ``(R, pivots)`` where ``pivots[i]`` is the pivot column of
    row ``i``.
    """
    R = _as_matrix(M, p)
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = R.shape
    limit = cols if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def solve(A, b, p: int):
    """One solution x of A x = b mod p (free variables 0), or None."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    aug = np.zeros((rows, cols + 1), dtype=np.int64)
    aug[:, :cols] = A
    aug[:, cols] = np.asarray(b, dtype=np.int64)
    R, pivots = rref(aug, p, ncols=cols)
    r = len(pivots)
    if np.any(R[r:, cols] % p):
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, cols]
    return x


def infeasibility_witness(A, b, p: int):
    """A row vector y with y A = 0 and y b != 0 mod p, or None if A x = b is solvable."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    aug = np.zeros((rows, cols + 1 + rows), dtype=np.int64)
    aug[:, :cols] = A
    aug[:, cols] = np.asarray(b, dtype=np.int64)
    aug[:, cols + 1:] = np.eye(rows, dtype=np.int64)
    R, pivots = rref(aug, p, ncols=cols)
    r = len(pivots)
    for i in range(r, rows):
        if R[i, cols] % p:
            return R[i, cols + 1:].copy()
    return None


def in_row_space(rows, v, p: int) -> bool:
    rows = np.asarray(rows, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64) % p
    if not np.any(v):
        return True
    if rows.size == 0:
        return False
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


def nullspace(M, p: int) -> np.ndarray:
    """Rows spanning {x : M x = 0} mod p."""
    M = np.asarray(M, dtype=np.int64)
    rows, cols = M.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for j, fc in enumerate(free):
        out[j, fc] = 1
        for i, pc in enumerate(pivots):
            out[j, pc] = (-R[i, fc]) % p
    return out
