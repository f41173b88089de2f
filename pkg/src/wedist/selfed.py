"""Bounded unweighted edit distance and bounded self-edit distance.

Both are diagonal-wave (Landau-Vishkin style) computations over furthest
reach tables; the self-edit variant removes the main-diagonal edges of
AG(X, X) and, without loss of generality, keeps the alignment on or below
the main diagonal (y <= x), which is the orientation the decomposition
procedures expect.

Each processed (wave, diagonal) cell performs one conceptual LCP query;
when a :class:`~wedist.pillar.PillarIndex` is supplied the cell count is
charged to its counters.
"""
from __future__ import annotations

import numpy as np

from . import _kernels as K
from .core import Alignment, as_symbols
from .pillar import PillarIndex


def _backtrack(reach, moves, dlo, j_end, d_end, y_is_x_plus_d=True) -> Alignment:
    """Recover the breakpoint alignment ending at (reach[j_end][d_end], .)."""
    i = d_end - dlo
    j = j_end
    x_end = int(reach[j, i])
    pts = [(x_end, x_end + d_end)]
    d = d_end
    while True:
        while moves[j, i] == K.MV_NONE:
            j -= 1
        mv = moves[j, i]
        if mv == K.MV_INIT:
            if (0, 0) != pts[-1]:
                pts.append((0, 0))
            break
        if mv == K.MV_SUB:
            src = int(reach[j - 1, i])
            pts.append((src, src + d))
        elif mv == K.MV_DEL:
            src = int(reach[j - 1, i + 1])
            pts.append((src, src + d + 1))
            i += 1
            d += 1
        else:  # MV_INS
            src = int(reach[j - 1, i - 1])
            pts.append((src, src + d - 1))
            i -= 1
            d -= 1
        j -= 1
    pts.reverse()
    x1, y1 = pts[-1]
    return Alignment(tuple(pts), (0, x1, 0, y1))


def ed_bounded(xs, ys, k: int, ix: PillarIndex | None = None,
               want_alignment: bool = True):
    """(ed(X, Y), witness) if the distance is at most k, else (None, None).

    O(k^2) LCP work; the witness is a breakpoint alignment.
    """
    xs, ys = as_symbols(xs), as_symbols(ys)
    n, m = len(xs), len(ys)
    if k < 0 or abs(n - m) > k:
        return None, None
    dstar = m - n
    dlo, dhi = -min(k, n), min(k, m)
    reach, moves, cells = K.lv_reach(xs, ys, k, dlo, dhi, False)
    if ix is not None:
        ix.charge("lcp", int(cells))
    istar = dstar - dlo
    hit = np.flatnonzero(reach[:, istar] >= n)
    if len(hit) == 0:
        return None, None
    j = int(hit[0])
    if not want_alignment:
        return j, None
    return j, _backtrack(reach, moves, dlo, j, dstar)


def selfed_bounded(xs, k: int, ix: PillarIndex | None = None,
                   want_alignment: bool = True):
    """(selfed(X), witness) if selfed(X) <= k, else (None, None).

    The witness self-alignment contains no main-diagonal edge and only
    points on or below the main diagonal (y <= x).
    """
    xs = as_symbols(xs)
    n = len(xs)
    if k < 0:
        return None, None
    if n == 0:
        return 0, (Alignment.identity(0) if want_alignment else None)
    dlo, dhi = -min(k, n), 0
    reach, moves, cells = K.lv_reach(xs, xs, k, dlo, dhi, True)
    if ix is not None:
        ix.charge("lcp", int(cells))
    istar = 0 - dlo
    hit = np.flatnonzero(reach[:, istar] >= n)
    if len(hit) == 0:
        return None, None
    j = int(hit[0])
    if not want_alignment:
        return j, None
    return j, _backtrack(reach, moves, dlo, j, 0)


def selfed_prefix_reach(xs, budget: int, ix: PillarIndex | None = None) -> int:
    """Largest t with selfed(X[0..t)) <= budget (monotone in t)."""
    xs = as_symbols(xs)
    n = len(xs)
    if n == 0 or budget >= 2 * n:
        return n
    dlo = -min(budget, n)
    reach, _, cells = K.lv_reach(xs, xs, budget, dlo, 0, True)
    if ix is not None:
        ix.charge("lcp", int(cells))
    return max(0, int(reach[budget, -dlo]))


def selfed_suffix_start(xs, budget: int, ix: PillarIndex | None = None) -> int:
    """Smallest t with selfed(X[t..n)) <= budget.

    Uses reversal invariance of the self-edit distance: runs the prefix
    reach on the reversed string.
    """
    xs = as_symbols(xs)
    n = len(xs)
    r = selfed_prefix_reach(xs[::-1].copy(), budget, ix)
    return n - r
