"""Min-plus linear algebra over int64 cost numerators.

Matrices are dense numpy int64 arrays; BIG (2**61) is the infinity
sentinel and absorbs saturated addition.  SMAWK row minima break ties
toward the leftmost column, which every path-recovery routine in the
package relies on.
"""
from __future__ import annotations

import os

import numpy as np

from .core import BIG

# numpy broadcasting beats the python SMAWK recursion below this many
# output cells; both paths produce identical values
_DENSE_CUTOFF = 1 << 22

_FAULT_SMAWK = os.environ.get("WEDIST_FAULT_INJECT", "") == "smawk-tiebreak"


def _sat(arr: np.ndarray) -> np.ndarray:
    return np.minimum(arr, BIG)


def smawk_row_minima(matrix, nrows: int | None = None, ncols: int | None = None) -> list:
    """Leftmost argmin column per row of a totally monotone matrix.

    ``matrix`` is either a 2-d ndarray or a callable (i, j) -> value.
    """
    if callable(matrix):
        if nrows is None or ncols is None:
            raise ValueError("callable matrix needs nrows and ncols")
        get = matrix
    else:
        m = np.asarray(matrix)
        nrows, ncols = m.shape

        def get(i, j):
            return m[i, j]

    out = [0] * nrows
    _smawk(list(range(nrows)), list(range(ncols)), get, out)
    return out


def _smawk(rows, cols, get, out):
    if not rows:
        return
    # reduce: keep at most len(rows) candidate columns
    stack = []
    for c in cols:
        while stack:
            r = rows[len(stack) - 1]
            if _FAULT_SMAWK:
                drop = get(r, stack[-1]) >= get(r, c)
            else:
                drop = get(r, stack[-1]) > get(r, c)
            if drop:
                stack.pop()
            else:
                break
        if len(stack) < len(rows):
            stack.append(c)
    cols = stack
    _smawk(rows[1::2], cols, get, out)
    # interpolate even rows between the odd rows' answers
    ci = 0
    for idx in range(0, len(rows), 2):
        r = rows[idx]
        hi = out[rows[idx + 1]] if idx + 1 < len(rows) else cols[-1]
        best = None
        bestc = None
        while True:
            c = cols[ci]
            v = get(r, c)
            if best is None or v < best:
                best, bestc = v, c
            if c == hi:
                break
            ci += 1
        out[r] = bestc


def vec_minplus(v: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """out[j] = min_t v[t] + M[t, j] for a Monge M; exact, saturated."""
    v = np.asarray(v, dtype=np.int64)
    mat = np.asarray(mat, dtype=np.int64)
    q, r = mat.shape
    if len(v) != q:
        raise ValueError("vector/matrix dimension mismatch")
    if q == 0:
        return np.full(r, BIG, dtype=np.int64)
    if q * r <= _DENSE_CUTOFF:
        return _sat((v[:, None] + mat).min(axis=0))

    def get(j, t):
        return v[t] + mat[t, j]

    arg = smawk_row_minima(get, r, q)
    return _sat(np.array([v[t] + mat[t, j] for j, t in enumerate(arg)], dtype=np.int64))


def monge_minplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Min-plus product of Monge matrices (result is Monge again)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    p, q = a.shape
    q2, r = b.shape
    if q != q2:
        raise ValueError("inner dimensions disagree")
    if q == 0:
        return np.full((p, r), BIG, dtype=np.int64)
    if p * q * r <= _DENSE_CUTOFF:
        return _sat((a[:, :, None] + b[None, :, :]).min(axis=1))
    out = np.empty((p, r), dtype=np.int64)
    for i in range(p):
        out[i] = vec_minplus(a[i], b)
    return out


def minplus_identity(n: int) -> np.ndarray:
    m = np.full((n, n), BIG, dtype=np.int64)
    np.fill_diagonal(m, 0)
    return m


def monge_power_table(d: np.ndarray, e: int) -> dict:
    """All floor/ceil powers of d needed to assemble the e-th power.

    Returns {exponent: matrix} where every entry is a true min-plus power
    of d; keys include 1 and e and are closed under the halving used by
    midpoint path recovery (for every key g > 1, floor(g/2) and
    ceil(g/2) are also keys).
    """
    if e < 1:
        raise ValueError("exponent must be positive")
    n = d.shape[0]
    if d.shape != (n, n):
        raise ValueError("powers need a square matrix")
    need = set()
    stack = [e]
    while stack:
        g = stack.pop()
        if g > 1 and g not in need:
            need.add(g)
            stack.append(g // 2)
            stack.append(g - g // 2)
    powers = {1: np.asarray(d, dtype=np.int64)}
    for g in sorted(need):
        powers[g] = monge_minplus(powers[g // 2], powers[g - g // 2])
    return powers


def monge_power(d: np.ndarray, e: int) -> np.ndarray:
    """e-th min-plus power of a square Monge matrix."""
    return monge_power_table(d, e)[e]


def is_monge(mat: np.ndarray) -> bool:
    """Check the quadrangle inequality on all adjacent 2x2 submatrices.

    Adjacent checks suffice by telescoping.  INF entries use saturated
    addition, so INF <= INF counts as satisfied.
    """
    m = np.asarray(mat, dtype=np.int64)
    if m.shape[0] < 2 or m.shape[1] < 2:
        return True
    lhs = _sat(m[:-1, :-1] + m[1:, 1:])
    rhs = _sat(m[:-1, 1:] + m[1:, :-1])
    return bool((lhs <= rhs).all())
