"""Reference implementations used as ground truth in differential tests.

Nothing here is performance-tuned beyond straightforward numpy
vectorization of the textbook recurrences; exactness always wins.  Inputs
whose numerators are too large for int64 arithmetic fall back to
pure-python ints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BIG, INF, Alignment, Cost, WeightError, add_cost, as_symbols,
    cost_from_num, normalize_check, WeightFn,
)

# finite numerators must stay below this after summing over a whole path
_SAFE_LIMIT = 1 << 57


def int64_safe(w: WeightFn, total_len: int) -> bool:
    return w.max_finite_num * (total_len + 4) < _SAFE_LIMIT


@dataclass
class DPResult:
    cost: Cost
    alignment: Alignment | None = None


def _ins_cumsum(ys: np.ndarray, w: WeightFn) -> np.ndarray:
    """csum[y] = cost of inserting ys[0..y); saturated at BIG."""
    c = np.zeros(len(ys) + 1, dtype=np.int64)
    if len(ys):
        c[1:] = np.minimum(np.cumsum(np.minimum(w.ins[ys], BIG)), BIG)
    return c


def _chain_min(cand: np.ndarray, csum: np.ndarray) -> np.ndarray:
    """Resolve d[t] = min(cand[t], d[t-1] + (csum[t]-csum[t-1])) exactly."""
    tmp = cand - csum
    np.minimum.accumulate(tmp, out=tmp)
    return np.minimum(tmp + csum, BIG)


def wed_quadratic(xs, ys, w: WeightFn, want_alignment: bool = True) -> DPResult:
    """Textbook O(nm) dynamic program for the weighted edit distance."""
    xs, ys = as_symbols(xs), as_symbols(ys)
    if want_alignment or not int64_safe(w, len(xs) + len(ys)):
        return _wed_quadratic_py(xs, ys, w, want_alignment)
    n, m = len(xs), len(ys)
    csum = _ins_cumsum(ys, w)
    row = csum.copy()
    dele = np.minimum(w.dele, BIG)
    for x in range(1, n + 1):
        a = int(xs[x - 1])
        cand = np.empty(m + 1, dtype=np.int64)
        cand[0] = min(row[0] + dele[a], BIG)
        if m:
            subs = np.minimum(w.sub[a, ys], BIG)
            cand[1:] = np.minimum(np.minimum(row[1:] + dele[a], row[:-1] + subs), BIG)
        row = _chain_min(cand, csum)
    return DPResult(cost_from_num(int(row[m])))


def _wed_quadratic_py(xs, ys, w: WeightFn, want_alignment: bool) -> DPResult:
    n, m = len(xs), len(ys)
    dp = [[INF] * (m + 1) for _ in range(n + 1)]
    dp[0][0] = 0
    for y in range(1, m + 1):
        dp[0][y] = add_cost(dp[0][y - 1], w.w_ins(int(ys[y - 1])))
    for x in range(1, n + 1):
        a = int(xs[x - 1])
        wd = w.w_del(a)
        dp[x][0] = add_cost(dp[x - 1][0], wd)
        prev, cur = dp[x - 1], dp[x]
        for y in range(1, m + 1):
            b = int(ys[y - 1])
            best = add_cost(prev[y - 1], w.w_sub(a, b))
            c = add_cost(prev[y], wd)
            if c < best:
                best = c
            c = add_cost(cur[y - 1], w.w_ins(b))
            if c < best:
                best = c
            cur[y] = best
    cost = dp[n][m]
    if not want_alignment or cost is INF:
        return DPResult(cost, None)
    # backtrack; ties prefer diagonal, then horizontal, then vertical
    pts = [(n, m)]
    x, y = n, m
    while (x, y) != (0, 0):
        v = dp[x][y]
        if x > 0 and y > 0 and add_cost(dp[x - 1][y - 1], w.w_sub(int(xs[x - 1]), int(ys[y - 1]))) == v:
            x, y = x - 1, y - 1
        elif x > 0 and add_cost(dp[x - 1][y], w.w_del(int(xs[x - 1]))) == v:
            x -= 1
        else:
            y -= 1
        pts.append((x, y))
    pts.reverse()
    return DPResult(cost, Alignment.from_points(pts, (0, n, 0, m)))


def wed_banded(xs, ys, w: WeightFn, k: int) -> Cost:
    """wed(X, Y) if it is at most k, else INF; explores only |x - y| <= k.

    Requires a normalized weight function (band pruning is unsound
    otherwise) and an integer threshold k >= 0.
    """
    if k < 0:
        raise ValueError("threshold k must be non-negative")
    if not normalize_check(w)["normalized"]:
        raise WeightError("wed_banded needs a normalized weight function")
    xs, ys = as_symbols(xs), as_symbols(ys)
    n, m = len(xs), len(ys)
    if abs(n - m) > k:
        return INF
    cap = k * w.denominator
    if not int64_safe(w, n + m):
        return _wed_banded_py(xs, ys, w, k, cap)
    width = 2 * k + 1
    csum = _ins_cumsum(ys, w)
    dele = np.minimum(w.dele, BIG)
    # col[t] = cost at (x, y) with y = x - k + t
    col = np.full(width, BIG, dtype=np.int64)
    top = min(m, k)
    col[k: k + top + 1] = csum[: top + 1]
    for x in range(1, n + 1):
        ylo, yhi = max(0, x - k), min(m, x + k)
        if ylo > yhi:
            return INF
        a = int(xs[x - 1])
        cand = np.full(width, BIG, dtype=np.int64)
        # deletion: previous column, same y -> t' = t + 1
        cand[:-1] = np.minimum(col[1:] + dele[a], BIG)
        # substitution: previous column, y - 1 -> t' = t
        tlo, thi = ylo - x + k, yhi - x + k
        ysl = ys[max(ylo, 1) - 1: yhi]
        if len(ysl):
            t0 = max(ylo, 1) - x + k
            subs = np.minimum(w.sub[a, ysl], BIG)
            seg = np.minimum(col[t0: t0 + len(ysl)] + subs, BIG)
            cand[t0: t0 + len(ysl)] = np.minimum(cand[t0: t0 + len(ysl)], seg)
        # insertion chain down the column
        new = _chain_min(cand[tlo: thi + 1], csum[ylo: yhi + 1])
        col = np.full(width, BIG, dtype=np.int64)
        col[tlo: thi + 1] = new
    t = m - n + k
    v = int(col[t])
    return INF if v >= BIG or v > cap else v


def _wed_banded_py(xs, ys, w: WeightFn, k: int, cap: int) -> Cost:
    n, m = len(xs), len(ys)
    width = 2 * k + 1
    col = [INF] * width
    for t in range(k, k + min(m, k) + 1):
        y = t - k
        col[t] = 0 if y == 0 else add_cost(col[t - 1], w.w_ins(int(ys[y - 1])))
    for x in range(1, n + 1):
        a = int(xs[x - 1])
        new = [INF] * width
        for t in range(width):
            y = x - k + t
            if y < 0 or y > m:
                continue
            best = add_cost(col[t + 1], w.w_del(a)) if t + 1 < width else INF
            if y >= 1:
                c = add_cost(col[t], w.w_sub(a, int(ys[y - 1])))
                if c < best:
                    best = c
                c = add_cost(new[t - 1], w.w_ins(int(ys[y - 1]))) if t >= 1 else INF
                if c < best:
                    best = c
            new[t] = best
        col = new
    v = col[m - n + k]
    return INF if v is INF or v > cap else v


def selfed_brute(xs) -> int:
    """Minimum unit cost of a self-alignment of X (no main-diagonal edges).

    Direct quadratic DP on the alignment graph AG(X, X) with every edge
    (x, x) -> (x+1, x+1) removed.
    """
    xs = as_symbols(xs)
    n = len(xs)
    big = 1 << 30
    dp = [[big] * (n + 1) for _ in range(n + 1)]
    dp[0][0] = 0
    for x in range(n + 1):
        for y in range(n + 1):
            best = dp[x][y]
            if x > 0 and dp[x - 1][y] + 1 < best:
                best = dp[x - 1][y] + 1
            if y > 0 and dp[x][y - 1] + 1 < best:
                best = dp[x][y - 1] + 1
            if x > 0 and y > 0 and x != y:  # skip main-diagonal edges
                c = dp[x - 1][y - 1] + (0 if xs[x - 1] == xs[y - 1] else 1)
                if c < best:
                    best = c
            dp[x][y] = best
    return dp[n][n]


def four_way_brute(xs, ys, w: WeightFn, d: int) -> tuple:
    """Reference for the four <=d quantities of the band solver.

    Returns (full, suffix_free, prefix_free, substring) where each entry is
    the exact value when <= d and INF otherwise.  Computed from full DP
    tables of AG(X, Y); O(n * m * m) overall, small inputs only.
    """
    xs, ys = as_symbols(xs), as_symbols(ys)
    n, m = len(xs), len(ys)
    cap = d * w.denominator

    def forward_from(p: int) -> np.ndarray:
        csum = _ins_cumsum(ys[p:], w)
        row = np.concatenate([np.full(p, BIG, dtype=np.int64), csum])
        dele = np.minimum(w.dele, BIG)
        for x in range(1, n + 1):
            a = int(xs[x - 1])
            cand = np.minimum(row + dele[a], BIG)
            if m:
                subs = np.minimum(w.sub[a, ys], BIG)
                cand[1:] = np.minimum(cand[1:], np.minimum(row[:-1] + subs, BIG))
            cw = np.zeros(m + 1, dtype=np.int64)
            cw[p:] = csum
            seg = _chain_min(cand[p:], cw[p:])
            row = np.full(m + 1, BIG, dtype=np.int64)
            row[p:] = seg
        return row

    def capped(v: int) -> Cost:
        return INF if v >= BIG or v > cap else int(v)

    if not int64_safe(w, n + m):
        # tiny inputs only: python quadratic DP per fragment
        full = suf = pre = sub = INF
        for p in range(m + 1):
            for q in range(p, m + 1):
                c = _wed_quadratic_py(xs, ys[p:q], w, False).cost
                if c is not INF and c <= cap:
                    sub = c if sub is INF else min(sub, c)
                    if p == 0:
                        pre = c if pre is INF else min(pre, c)
                    if q == m:
                        suf = c if suf is INF else min(suf, c)
                    if p == 0 and q == m:
                        full = c
        return full, suf, pre, sub

    full = suf = pre = sub = INF
    for p in range(m + 1):
        row = forward_from(p)
        best_any = capped(int(row[p:].min()))
        end = capped(int(row[m]))
        if p == 0:
            full = end
            pre = best_any
        if end is not INF:
            suf = end if suf is INF else min(suf, end)
        if best_any is not INF:
            sub = best_any if sub is INF else min(sub, best_any)
    return full, suf, pre, sub
