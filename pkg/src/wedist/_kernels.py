"""Compiled inner loops (numba, cached).

All kernels work on int32 symbol arrays and int64 numerator tables, with
BIG (2**61) as the infinity sentinel.  They return raw tables; python-side
wrappers do the interpretation and witness reconstruction.
"""
from __future__ import annotations

import numpy as np
from numba import njit

BIG = 1 << 61

# move codes for the LV tables
MV_NONE = -1
MV_INIT = 0
MV_SUB = 1
MV_DEL = 2
MV_INS = 3


@njit(cache=True)
def lv_reach(xs, ys, budget, dlo, dhi, forbid_diag0):
    """Landau-Vishkin furthest-reach waves over diagonals d = y - x.

    Returns (reach, moves, cells):
      reach[j, d - dlo] = furthest x with (x, x+d) reachable at unit cost <= j
                          (-1 if unreachable),
      moves[j, d - dlo] = move that attained it (MV_*),
      cells = number of (wave, diagonal) cells processed (one conceptual
              LCP query each).

    With ``forbid_diag0`` the diagonal edges on d == 0 are skipped (no
    slides, no substitution steps), which computes self-edit reachability.
    """
    n = len(xs)
    m = len(ys)
    width = dhi - dlo + 1
    reach = np.full((budget + 1, width), -1, dtype=np.int64)
    moves = np.full((budget + 1, width), MV_NONE, dtype=np.int8)
    cells = 0
    # wave 0
    if dlo <= 0 <= dhi:
        i = 0 - dlo
        x = 0
        if not forbid_diag0:
            while x < n and x < m and xs[x] == ys[x]:
                x += 1
        reach[0, i] = x
        moves[0, i] = MV_INIT
        cells += 1
    for j in range(1, budget + 1):
        prev = reach[j - 1]
        for d in range(max(dlo, -j), min(dhi, j) + 1):
            i = d - dlo
            lim = n if n + d <= m else m - d  # max x with both coords in range
            if lim < 0:
                continue
            best = -1
            mv = MV_NONE
            # substitution: same diagonal (skip on the punctured diagonal)
            if not (forbid_diag0 and d == 0):
                v = prev[i]
                if v >= 0 and v < lim:
                    best = v + 1
                    mv = MV_SUB
            # deletion of X: from diagonal d+1
            if i + 1 < width:
                v = prev[i + 1]
                if v >= 0 and v < lim and v + 1 > best:
                    best = v + 1
                    mv = MV_DEL
            # insertion of Y: from diagonal d-1
            if i - 1 >= 0:
                v = prev[i - 1]
                if v >= 0:
                    v2 = v if v <= lim else lim
                    # insertion needs y = v + (d-1) + 1 <= m, i.e. v <= m - d
                    if v <= m - d and v2 > best:
                        best = v2
                        mv = MV_INS
            if best < 0:
                continue
            x = best
            if not (forbid_diag0 and d == 0):
                while x < n and x + d < m and xs[x] == ys[x + d]:
                    x += 1
            cells += 1
            if x > reach[j, i]:
                reach[j, i] = x
                moves[j, i] = mv
        # carry over previous wave's reaches (cost <= j)
        for i in range(width):
            if prev[i] > reach[j, i]:
                reach[j, i] = prev[i]
                moves[j, i] = MV_NONE  # marker: inherited from wave j-1
    return reach, moves, cells


@njit(cache=True)
def banded_wed(xs, ys, sub, ins, dele, k, want_moves):
    """Weighted banded DP over |y - x| <= k; int64 numerators.

    Returns (final value (BIG if unreachable), move table).  Move codes:
    1 sub/match, 2 delete (horizontal), 3 insert (vertical), 0 origin,
    -1 unreachable; table shape (n+1, 2k+1) when requested else (1, 1).
    """
    n = len(xs)
    m = len(ys)
    width = 2 * k + 1
    col = np.full(width, BIG, dtype=np.int64)
    if want_moves:
        mv = np.full((n + 1, width), -1, dtype=np.int8)
    else:
        mv = np.full((1, 1), -1, dtype=np.int8)
    top = m if m < k else k
    col[k] = 0
    if want_moves:
        mv[0, k] = 0
    for y in range(1, top + 1):
        col[k + y] = col[k + y - 1] + ins[ys[y - 1]]
        if col[k + y] > BIG:
            col[k + y] = BIG
        if want_moves:
            mv[0, k + y] = 3
    for x in range(1, n + 1):
        a = xs[x - 1]
        new = np.full(width, BIG, dtype=np.int64)
        ylo = x - k
        if ylo < 0:
            ylo = 0
        yhi = x + k
        if yhi > m:
            yhi = m
        for y in range(ylo, yhi + 1):
            t = y - x + k
            best = BIG
            code = -1
            if y >= 1 and col[t] < BIG:
                c = col[t] + sub[a, ys[y - 1]]
                if c < best:
                    best = c
                    code = 1
            if t + 1 < width and col[t + 1] < BIG:
                c = col[t + 1] + dele[a]
                if c < best:
                    best = c
                    code = 2
            if y >= 1 and t >= 1 and new[t - 1] < BIG:
                c = new[t - 1] + ins[ys[y - 1]]
                if c < best:
                    best = c
                    code = 3
            if best > BIG:
                best = BIG
            new[t] = best
            if want_moves and code >= 0 and best < BIG:
                mv[x, t] = code
        col = new
    t = m - n + k
    if 0 <= t < width:
        out = col[t]
    else:
        out = BIG
    return out, mv


@njit(cache=True)
def band_window_sweep(xs, ys, sub, ins, dele, lo, hi, free_start, cap):
    """Forward DP over the diagonal window lo <= y - x <= hi.

    Sources: (0, y) for y in window (cost 0) when free_start, else only
    (0, 0).  Returns the final column's values (y in [n+lo .. n+hi]
    clipped), as an int64 array indexed by offset y-(n+lo), plus the full
    per-column tables for backtracking, flattened: vals[x, t] with
    t = y - (x + lo) in [0, hi-lo].
    """
    n = len(xs)
    m = len(ys)
    width = hi - lo + 1
    vals = np.full((n + 1, width), BIG, dtype=np.int64)
    # column 0
    ylo = lo if lo > 0 else 0
    yhi = hi if hi < m else m
    for y in range(ylo, yhi + 1):
        t = y - lo
        if free_start:
            vals[0, t] = 0
        else:
            if y == 0:
                vals[0, t] = 0
            elif t >= 1 and vals[0, t - 1] < BIG:
                v = vals[0, t - 1] + ins[ys[y - 1]]
                if v <= cap:
                    vals[0, t] = v
    for x in range(1, n + 1):
        ylo = x + lo
        if ylo < 0:
            ylo = 0
        yhi = x + hi
        if yhi > m:
            yhi = m
        a = xs[x - 1]
        for y in range(ylo, yhi + 1):
            t = y - x - lo
            best = BIG
            if y >= 1 and vals[x - 1, t] < BIG:
                c = vals[x - 1, t] + sub[a, ys[y - 1]]
                if c < best:
                    best = c
            if t + 1 < width and vals[x - 1, t + 1] < BIG:
                c = vals[x - 1, t + 1] + dele[a]
                if c < best:
                    best = c
            if y >= 1 and t >= 1 and vals[x, t - 1] < BIG:
                c = vals[x, t - 1] + ins[ys[y - 1]]
                if c < best:
                    best = c
            if best <= cap:
                vals[x, t] = best
    return vals


@njit(cache=True)
def band_strip_table(xs, ys, sub, ins, dele, xoff, blo, bhi, s):
    """Single-source DP table over a band strip; source offset s in col 0.

    Same geometry as :func:`band_strip_matrix`: vertices (x, y) with
    x in [xoff, xoff + len(xs)], y - x in [blo, bhi], y in [0, len(ys)].
    Returns vals[i, t] = distance from (xoff, xoff + blo + s) to
    (xoff + i, xoff + i + blo + t).
    """
    w = len(xs)
    m = len(ys)
    height = bhi - blo + 1
    vals = np.full((w + 1, height), BIG, dtype=np.int64)
    y0 = xoff + blo + s
    if y0 < 0 or y0 > m:
        return vals
    vals[0, s] = 0
    for t in range(s + 1, height):
        y = xoff + blo + t
        if y < 1 or y > m:
            continue
        if vals[0, t - 1] < BIG:
            vals[0, t] = vals[0, t - 1] + ins[ys[y - 1]]
    for i in range(w):
        x = xoff + i + 1
        a = xs[i]
        for t in range(height):
            y = x + blo + t
            if y < 0 or y > m:
                continue
            best = BIG
            if t + 1 < height and vals[i, t + 1] < BIG:
                c = vals[i, t + 1] + dele[a]
                if c < best:
                    best = c
            if y >= 1 and vals[i, t] < BIG:
                c = vals[i, t] + sub[a, ys[y - 1]]
                if c < best:
                    best = c
            if y >= 1 and t >= 1 and vals[i + 1, t - 1] < BIG:
                c = vals[i + 1, t - 1] + ins[ys[y - 1]]
                if c < best:
                    best = c
            if best > BIG:
                best = BIG
            vals[i + 1, t] = best
    return vals


@njit(cache=True)
def band_strip_matrix(xs, ys, sub, ins, dele, xoff, blo, bhi):
    """Pairwise distances between the boundary columns of a band strip.

    The strip is the subgraph of the alignment graph induced by vertices
    (x, y) with x in [xoff, xoff + len(xs)] and y - x in [blo, bhi] and
    y in [0, yoff + len(ys_total) ...]; callers pass ys as the full second
    string so character lookups use global coordinates (xs is the phrase
    slice; xs[i] is the character consumed by column step xoff+i ->
    xoff+i+1).  Rows outside [0, len(ys)] are absent.

    Returns D[s, t] with s, t in [0, bhi - blo]: distance from
    (xoff, xoff + blo + s) to (xoff + w, xoff + w + blo + t); BIG where a
    boundary vertex does not exist or is unreachable.
    """
    w = len(xs)
    m = len(ys)
    height = bhi - blo + 1
    out = np.full((height, height), BIG, dtype=np.int64)
    cur = np.empty(height, dtype=np.int64)
    nxt = np.empty(height, dtype=np.int64)
    for s in range(height):
        y_start = xoff + blo + s
        if y_start < 0 or y_start > m:
            continue
        for t in range(height):
            cur[t] = BIG
        cur[s] = 0
        # vertical chain within the start column
        for t in range(s + 1, height):
            y = xoff + blo + t
            if y < 1 or y > m:
                continue
            if cur[t - 1] < BIG:
                c = cur[t - 1] + ins[ys[y - 1]]
                if c < cur[t]:
                    cur[t] = c
        for i in range(w):
            x = xoff + i + 1
            a = xs[i]
            for t in range(height):
                nxt[t] = BIG
            for t in range(height):
                y = x + blo + t
                if y < 0 or y > m:
                    continue
                best = BIG
                # horizontal: (x-1, y) -> (x, y); same y means offset t+1 in prev col
                if t + 1 < height and cur[t + 1] < BIG:
                    c = cur[t + 1] + dele[a]
                    if c < best:
                        best = c
                # diagonal: (x-1, y-1) -> (x, y); offset t in prev col
                if y >= 1 and cur[t] < BIG:
                    c = cur[t] + sub[a, ys[y - 1]]
                    if c < best:
                        best = c
                # vertical within this column
                if y >= 1 and t >= 1 and nxt[t - 1] < BIG:
                    c = nxt[t - 1] + ins[ys[y - 1]]
                    if c < best:
                        best = c
                if best > BIG:
                    best = BIG
                nxt[t] = best
            for t in range(height):
                cur[t] = nxt[t]
        for t in range(height):
            out[s, t] = cur[t]
    return out
