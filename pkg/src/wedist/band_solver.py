"""Four-way bounded distances for strings with small self-edit distance.

Given selfed(X) <= k and ||X| - |Y|| <= 2d, computes, with witnesses:

* ``full``:        wed_{<=d}(X, Y)
* ``suffix_free``: min_p wed_{<=d}(X, Y[p..))
* ``prefix_free``: min_q wed_{<=d}(X, Y[..q))
* ``substring``:   min_{p<=q} wed_{<=d}(X, Y[p..q))

Any alignment achieving <= d stays in the diagonal band y - x in [-d, 3d]
(after discarding inputs whose length difference already exceeds the
budget), so all variants are shortest-path problems on the band graph.

Two engines, identical outputs:

* :func:`solve_pillar`: phrase-decompose X, exploit that consecutive
  phrase strips of the band are isomorphic, and raise each strip's
  boundary matrix to a min-plus power (floor/ceil descent so that every
  intermediate is a true power, which midpoint path recovery needs).
* :func:`solve_standard`: phrase-decompose X and Y, share boundary
  matrices across isomorphism classes of relevant boxes, and sweep the
  boxes in lexicographic order with min-plus vector products.  Narrow
  instances take a fused banded-DP fast path with the same contract.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .core import (
    BIG, INF, Alignment, Band, Cost, WeightError, as_symbols, cost_from_num,
    normalize_check, WeightFn,
)
from .decompose import decompose_pillar, decompose_std, DecompositionError
from .monge import monge_minplus, monge_power_table, vec_minplus
from .oracle import _chain_min, _ins_cumsum
from .pillar import Fragment, PillarIndex
from .selfed import ed_bounded, selfed_bounded


@dataclass(frozen=True)
class BandGraphView:
    """A box of the alignment graph: X-phrase x Y-phrase, optional band."""

    xs: np.ndarray
    ys: np.ndarray
    w: WeightFn
    band: Band | None = None


@dataclass(frozen=True)
class BoundaryMatrix:
    """Input -> output distances along a box boundary, Monge-ordered.

    Inputs: left column bottom-to-top, then top row left-to-right.
    Outputs: bottom row left-to-right, then right column bottom-to-top.
    Coordinates are box-local; ``matrix[u, v]`` is the exact distance.
    """

    inputs: tuple
    outputs: tuple
    matrix: np.ndarray


@dataclass
class FourWayResult:
    full: tuple
    suffix_free: tuple
    prefix_free: tuple
    substring: tuple
    stats: dict = field(default_factory=dict)

    def values(self) -> tuple:
        return (self.full[0], self.suffix_free[0], self.prefix_free[0], self.substring[0])


class BandSolverError(ValueError):
    pass


_BOX_CAP = 4096          # max box side for dense boundary matrices
_BOX_BASE = 8            # divide-and-conquer base-case side
_FUSED_CELL_BUDGET = 1 << 22


def _box_inputs(w: int, h: int) -> list:
    return [(0, b) for b in range(h, -1, -1)] + [(a, 0) for a in range(1, w + 1)]


def _box_outputs(w: int, h: int) -> list:
    return [(a, h) for a in range(w + 1)] + [(w, b) for b in range(h - 1, -1, -1)]


def _box_table(xs, ys, w: WeightFn, a0: int, b0: int) -> np.ndarray:
    """Grid DP from local vertex (a0, b0) over the whole box; int64."""
    wd, h = len(xs), len(ys)
    csum = _ins_cumsum(ys, w)
    dele = np.minimum(w.dele, BIG)
    out = np.empty((wd + 1, h + 1), dtype=np.int64)
    col = np.full(h + 1, BIG, dtype=np.int64)
    col[b0] = 0
    col[b0:] = _chain_min(col[b0:], csum[b0:])
    out[a0] = col
    out[:a0] = BIG
    for a in range(a0 + 1, wd + 1):
        c = int(xs[a - 1])
        cand = np.minimum(col + dele[c], BIG)
        if h:
            subs = np.minimum(w.sub[c, ys], BIG)
            cand[1:] = np.minimum(cand[1:], np.minimum(col[:-1] + subs, BIG))
        col = _chain_min(cand, csum)
        out[a] = col
    return out


def box_boundary_matrix_naive(view: BandGraphView) -> BoundaryMatrix:
    """Per-source DAG-DP reference for box boundary matrices (O(s^3))."""
    xs, ys, w = view.xs, view.ys, view.w
    wd, h = len(xs), len(ys)
    ins = _box_inputs(wd, h)
    outs = _box_outputs(wd, h)
    mat = np.full((len(ins), len(outs)), BIG, dtype=np.int64)
    for ui, (a0, b0) in enumerate(ins):
        table = _box_table(xs, ys, w, a0, b0)
        for vi, (a, b) in enumerate(outs):
            mat[ui, vi] = table[a, b]
    return BoundaryMatrix(tuple(ins), tuple(outs), mat)


def _boundary_mat_rec(xs, ys, w: WeightFn) -> np.ndarray:
    wd, h = len(xs), len(ys)
    if min(wd, h) == 0 or wd * h <= _BOX_BASE * _BOX_BASE:
        return box_boundary_matrix_naive(BandGraphView(xs, ys, w)).matrix
    n_in = h + 1 + wd
    n_out = wd + 1 + h
    mat = np.full((n_in, n_out), BIG, dtype=np.int64)
    if wd >= h:
        wm = wd // 2
        left = _boundary_mat_rec(xs[:wm], ys, w)
        right = _boundary_mat_rec(xs[wm:], ys, w)
        ils = h + 1 + wm
        mat[:ils, :wm] = left[:, :wm]
        mat[:ils, wm:] = monge_minplus(left[:, wm:], right[: h + 1, :])
        mat[ils:, wm:] = right[h + 1:, :]
    else:
        hm = h // 2
        top = _boundary_mat_rec(xs, ys[:hm], w)
        bot = _boundary_mat_rec(xs, ys[hm:], w)
        bos = wd + 1 + (h - hm)
        mat[: h - hm, :bos] = bot[: h - hm, :]
        mat[h - hm:, :bos] = monge_minplus(top[:, : wd + 1], bot[h - hm:, :])
        mat[h - hm:, bos:] = top[:, wd + 1:]
    return mat


def box_boundary_matrix(view: BandGraphView) -> BoundaryMatrix:
    """Exact boundary matrix of a box by divide-and-conquer.

    Splits the box in half along its longer side, recurses, and joins the
    children with a min-plus product over the interface; O(s^2 log s) for
    side s.  The per-source oracle :func:`box_boundary_matrix_naive` is
    kept for differential tests.
    """
    wd, h = len(view.xs), len(view.ys)
    if max(wd, h) > _BOX_CAP:
        raise BandSolverError(f"box side exceeds cap {_BOX_CAP}")
    mat = _boundary_mat_rec(view.xs, view.ys, view.w)
    return BoundaryMatrix(tuple(_box_inputs(wd, h)), tuple(_box_outputs(wd, h)), mat)


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

def _all_inf(stats) -> FourWayResult:
    miss = (INF, None)
    return FourWayResult(miss, miss, miss, miss, stats)


def _band_bounds(d: int) -> tuple:
    return -d, 3 * d


def _check_common(xs, ys, w: WeightFn, d: int, k: int) -> None:
    if k < 1:
        raise BandSolverError("k must be at least 1")
    if d < 0 or d > k:
        raise BandSolverError("need 0 <= d <= k")
    if not normalize_check(w)["normalized"]:
        raise WeightError("band solver needs a normalized weight function")


def _fused_solve(xs, ys, w: WeightFn, d: int, want_alignments: bool,
                 ix: PillarIndex | None = None) -> FourWayResult:
    """Banded DP over y - x in [-d, 3d]; computes all four values directly."""
    n, m = len(xs), len(ys)
    lo, hi = _band_bounds(d)
    cap = d * w.denominator
    sub = np.minimum(w.sub, BIG)
    ins = np.minimum(w.ins, BIG)
    dele = np.minimum(w.dele, BIG)
    fixed = K.band_window_sweep(xs, ys, sub, ins, dele, lo, hi, False, cap)
    free = K.band_window_sweep(xs, ys, sub, ins, dele, lo, hi, True, cap)
    if ix is not None:
        ix.charge("access", 2 * (n + 1) * (hi - lo + 1))

    def read(vals, x, y):
        t = y - x - lo
        if 0 <= t <= hi - lo and 0 <= y <= m:
            return int(vals[x, t])
        return BIG

    def backtrack(vals, x, y, fixed_start):
        pts = [(x, y)]
        v = read(vals, x, y)
        while True:
            if x == 0 and v == 0 and (not fixed_start or y == 0):
                break
            if x > 0 and y > 0 and read(vals, x - 1, y - 1) + int(sub[xs[x - 1], ys[y - 1]]) == v:
                x, y = x - 1, y - 1
            elif x > 0 and read(vals, x - 1, y) + int(dele[xs[x - 1]]) == v:
                x -= 1
            elif y > 0 and read(vals, x, y - 1) + int(ins[ys[y - 1]]) == v:
                y -= 1
            else:
                raise BandSolverError("band backtrack lost the path")
            v = read(vals, x, y)
            pts.append((x, y))
        pts.reverse()
        return pts

    def result(vals, x, y, fixed_start):
        v = read(vals, x, y)
        if v >= BIG or v > cap:
            return (INF, None)
        if not want_alignments:
            return (cost_from_num(v), None)
        pts = backtrack(vals, x, y, fixed_start)
        p = pts[0][1]
        al = Alignment.from_points(pts, (0, n, p, y))
        return (cost_from_num(v), al)

    def best_end(vals):
        row = vals[n]
        t = int(np.argmin(row))
        return n + lo + t

    full = result(fixed, n, m, True) if 0 <= m - n - lo <= hi - lo else (INF, None)
    qf = best_end(fixed)
    prefix = result(fixed, n, qf, True)
    suffix = result(free, n, m, False) if 0 <= m - n - lo <= hi - lo else (INF, None)
    qs = best_end(free)
    substring = result(free, n, qs, False)
    stats = {"engine": "fused", "cells": 2 * (n + 1) * (hi - lo + 1)}
    return FourWayResult(full, suffix, prefix, substring, stats)


# ---------------------------------------------------------------------------
# standard engine: box decomposition sweep
# ---------------------------------------------------------------------------

def _roots(dec) -> list:
    """Ultimate source phrase per phrase (fresh phrases are their own root)."""
    roots = []
    for i in range(dec.num_phrases):
        s = dec.sources.get(i) if dec.sources else None
        roots.append(i if s is None else roots[s])
    return roots


def _ell_for(n: int, d: int, k: int) -> int:
    logn = max(1, (max(n, 2) - 1).bit_length())
    val = int(np.ceil(np.sqrt(n * max(d, 1)) / (k * np.sqrt(logn))))
    return max(1, min(val, max(d, 1)))


class _BoxSweep:
    """One lexicographic sweep over the relevant boxes of AG(X, Y)."""

    def __init__(self, xs, ys, w, d, decx, decy, mats, cap, free_start):
        self.xs, self.ys, self.w = xs, ys, w
        self.cap = cap
        self.bx = decx.boundaries
        self.by = decy.boundaries
        self.mats = mats          # (i, j) -> np matrix (shared per class)
        self.lo, self.hi = _band_bounds(d)
        self.free = free_start
        self.dist: dict = {}

    def _box_vertices(self, i, j):
        x0, x1 = self.bx[i], self.bx[i + 1]
        y0, y1 = self.by[j], self.by[j + 1]
        w, h = x1 - x0, y1 - y0
        ins = [(x0 + a, y0 + b) for a, b in _box_inputs(w, h)]
        outs = [(x0 + a, y0 + b) for a, b in _box_outputs(w, h)]
        return ins, outs

    def is_source(self, v) -> bool:
        return v[0] == 0 and (self.free or v[1] == 0)

    def run(self, boxes):
        dist = self.dist
        for (i, j) in boxes:
            ins, outs = self._box_vertices(i, j)
            vals = np.full(len(ins), BIG, dtype=np.int64)
            for ui, v in enumerate(ins):
                if self.is_source(v):
                    vals[ui] = 0
                elif v in dist:
                    vals[ui] = dist[v]
            if vals.min() >= BIG:
                continue
            out_vals = vec_minplus(vals, self.mats[(i, j)])
            for vi, v in enumerate(outs):
                c = int(out_vals[vi])
                if c <= self.cap and c < dist.get(v, BIG):
                    dist[v] = c

    def value_at(self, v) -> int:
        if self.is_source(v):
            return 0
        return self.dist.get(v, BIG)


def solve_standard(xs, ys, w: WeightFn, d: int, k: int,
                   want_alignments: bool = True, mode: str = "auto") -> FourWayResult:
    """Standard-setting four-way band solver (box decomposition sweep).

    Raises BandSolverError when selfed(X) > k; returns all-INF when
    ||X| - |Y|| > 2d or selfed(Y) > 10k (no <=d alignment can exist then).
    ``mode``: 'auto' picks between the box sweep and the fused banded DP;
    'boxes' / 'fused' force an engine (outputs are identical).
    """
    xs, ys = as_symbols(xs), as_symbols(ys)
    _check_common(xs, ys, w, d, k)
    n, m = len(xs), len(ys)
    stats = {"engine": "standard"}
    if abs(n - m) > 2 * d:
        return _all_inf(stats)
    if selfed_bounded(xs, k, want_alignment=False)[0] is None:
        raise BandSolverError(f"selfed(X) > {k}")
    if selfed_bounded(ys, 10 * k, want_alignment=False)[0] is None:
        return _all_inf(dict(stats, early_out="selfed_y"))
    ell = _ell_for(max(n, m, 2), d, k)
    band_cells = (n + 1) * (4 * d + 2)
    if mode == "fused" or (mode == "auto" and
                           (n == 0 or m == 0 or ell <= 2 or band_cells <= _FUSED_CELL_BUDGET)):
        return _fused_solve(xs, ys, w, d, want_alignments)
    if n == 0 or m == 0:
        return _fused_solve(xs, ys, w, d, want_alignments)

    decx = decompose_std(xs, k, ell)
    decy = decompose_std(ys, 10 * k, ell)
    rx, ry = _roots(decx), _roots(decy)
    bx, by = decx.boundaries, decy.boundaries
    mx, my = decx.num_phrases, decy.num_phrases
    lo, hi = _band_bounds(d)
    cap = d * w.denominator

    boxes = []
    for i in range(mx):
        x0, x1 = bx[i], bx[i + 1]
        jlo = bisect_right(by, x0 + lo) - 1
        jlo = max(0, jlo)
        jhi = bisect_left(by, x1 + hi + 1) - 1
        jhi = min(my - 1, jhi)
        for j in range(jlo, jhi + 1):
            if by[j + 1] >= x0 + lo and by[j] <= x1 + hi:
                boxes.append((i, j))

    classes: dict = {}
    mats: dict = {}
    for (i, j) in boxes:
        key = (rx[i], ry[j])
        if key not in classes:
            view = BandGraphView(xs[bx[i]: bx[i + 1]], ys[by[j]: by[j + 1]], w)
            classes[key] = box_boundary_matrix(view).matrix
        mats[(i, j)] = classes[key]
    stats.update(boxes=len(boxes), classes=len(classes), ell=ell)

    sweep_fixed = _BoxSweep(xs, ys, w, d, decx, decy, mats, cap, free_start=False)
    sweep_fixed.run(boxes)
    sweep_free = _BoxSweep(xs, ys, w, d, decx, decy, mats, cap, free_start=True)
    sweep_free.run(boxes)

    box_of_out: dict = {}
    for (i, j) in boxes:
        _, outs = sweep_fixed._box_vertices(i, j)
        for v in outs:
            box_of_out.setdefault(v, []).append((i, j))

    def backtrack(sweep, v):
        pts_rev = [v]
        while not sweep.is_source(v):
            c = sweep.value_at(v)
            found = None
            for (i, j) in box_of_out.get(v, ()):  # at most two candidate boxes
                ins, outs = sweep._box_vertices(i, j)
                vi = outs.index(v)
                matcol = mats[(i, j)][:, vi]
                for ui, u in enumerate(ins):
                    du = sweep.value_at(u)
                    if du < BIG and matcol[ui] < BIG and du + int(matcol[ui]) == c:
                        found = (u, (i, j))
                        break
                if found:
                    break
            if not found:
                raise BandSolverError("box backtrack lost the path")
            u, (i, j) = found
            x0, y0 = bx[i], by[j]
            table = _box_table(xs[bx[i]: bx[i + 1]], ys[by[j]: by[j + 1]], w,
                               u[0] - x0, u[1] - y0)
            a, b = v[0] - x0, v[1] - y0
            seg = [(a, b)]
            while (a, b) != (u[0] - x0, u[1] - y0):
                cc = table[a, b]
                if a > 0 and b > 0 and table[a - 1, b - 1] + int(min(w.sub[xs[x0 + a - 1], ys[y0 + b - 1]], BIG)) == cc:
                    a, b = a - 1, b - 1
                elif a > 0 and table[a - 1, b] + int(min(w.dele[xs[x0 + a - 1]], BIG)) == cc:
                    a -= 1
                elif b > 0 and table[a, b - 1] + int(min(w.ins[ys[y0 + b - 1]], BIG)) == cc:
                    b -= 1
                else:
                    raise BandSolverError("in-box backtrack lost the path")
                seg.append((a, b))
            for (a, b) in seg[1:]:
                pts_rev.append((x0 + a, y0 + b))
            v = u
        pts_rev.reverse()
        return pts_rev

    def result(sweep, v):
        c = sweep.value_at(v)
        if c >= BIG or c > cap:
            return (INF, None)
        if not want_alignments:
            return (cost_from_num(c), None)
        pts = backtrack(sweep, v)
        # drop duplicate seam points
        dedup = [pts[0]]
        for p in pts[1:]:
            if p != dedup[-1]:
                dedup.append(p)
        al = Alignment.from_points(dedup, (0, n, dedup[0][1], v[1]))
        return (cost_from_num(c), al)

    def best_terminal(sweep):
        best_v, best_c = None, BIG
        for q in range(max(0, n + lo), min(m, n + hi) + 1):
            c = sweep.value_at((n, q))
            if c < best_c:
                best_v, best_c = (n, q), c
        return best_v

    corner_ok = lo <= m - n <= hi
    full = result(sweep_fixed, (n, m)) if corner_ok else (INF, None)
    vq = best_terminal(sweep_fixed)
    prefix = result(sweep_fixed, vq) if vq else (INF, None)
    suffix = result(sweep_free, (n, m)) if corner_ok else (INF, None)
    vs = best_terminal(sweep_free)
    substring = result(sweep_free, vs) if vs else (INF, None)
    return FourWayResult(full, suffix, prefix, substring, stats)


# ---------------------------------------------------------------------------
# PILLAR engine: isomorphic column strips + min-plus powers
# ---------------------------------------------------------------------------

def _weight_arrays(w: WeightFn):
    return (np.minimum(w.sub, BIG), np.minimum(w.ins, BIG), np.minimum(w.dele, BIG))


def _fresh_prime(xs, ys, dec, d: int, ixy: PillarIndex | None, fy: Fragment | None) -> set:
    """Indices whose phrase strip may differ from its predecessor's.

    i not in F' guarantees strip i is isomorphic to strip i-1 (same
    X-phrase, same Y-window, no band clipping).  Built with O(|F| + |F'|)
    LCP queries using the arithmetic structure of phrase runs.
    """
    bd = dec.boundaries
    m_ph = dec.num_phrases
    n_y = len(ys)

    def lcp_y(a, b):
        if ixy is not None:
            f = fy if fy is not None else ixy.whole(1)
            return ixy.lcp(Fragment(f.sid, f.start + a, f.end),
                           Fragment(f.sid, f.start + b, f.end))
        i = 0
        while a + i < n_y and b + i < n_y and ys[a + i] == ys[b + i]:
            i += 1
        return i

    def lcp_x(a, b):
        i = 0
        while a + i < len(xs) and b + i < len(xs) and xs[a + i] == xs[b + i]:
            i += 1
        return i

    fprime: set = set()
    # post-process fresh markers: an F entry whose phrase equals its
    # predecessor dissolves into the surrounding equal-phrase run
    markers = [0]
    for i in sorted(dec.fresh):
        if i == 0:
            continue
        la, lb = bd[i + 1] - bd[i], bd[i] - bd[i - 1]
        if la != lb or lcp_x(bd[i - 1], bd[i]) < la:
            markers.append(i)
    markers = sorted(set(markers))
    for (s, e) in zip(markers, markers[1:] + [m_ph]):
        if s > 0:
            fprime.add(s)
        p = bd[s + 1] - bd[s]
        # strips j in (s, e) violating the no-clipping condition
        j_first, j_last = s + 1, e - 1
        while j_first <= j_last and bd[j_first - 1] < d:
            fprime.add(j_first)
            j_first += 1
        while j_last >= j_first and bd[j_last + 1] > n_y - 3 * d:
            fprime.add(j_last)
            j_last -= 1
        j = j_first
        while j <= j_last:
            beta = lcp_y(bd[j - 1] - d, bd[j] - d)
            if beta < p + 4 * d:
                fprime.add(j)
                j += 1
                continue
            # Y is p-periodic on [bd[j-1]-d, bd[j-1]-d+p+beta); every strip
            # whose window lies inside it is isomorphic to its predecessor
            lim = bd[j - 1] - d + beta - 3 * d
            j = min(j + max(0, (lim - bd[j]) // p), j_last) + 1
    fprime.discard(0)
    fprime.discard(m_ph)
    return fprime


def solve_pillar(xs, ys, w: WeightFn, d: int, k: int,
                 ix: PillarIndex | None = None,
                 fx: Fragment | None = None, fy: Fragment | None = None,
                 want_alignments: bool = True) -> FourWayResult:
    """PILLAR-engine four-way band solver (strip powers over runs).

    ``ix`` (covering X as string 0 and Y as string 1 by default, or the
    fragments ``fx``/``fy``) is used for LCP queries and operation
    accounting; without it, character scans stand in.
    """
    xs, ys = as_symbols(xs), as_symbols(ys)
    _check_common(xs, ys, w, d, k)
    n, m = len(xs), len(ys)
    stats = {"engine": "pillar"}
    if abs(n - m) > 2 * d:
        return _all_inf(stats)
    if selfed_bounded(xs, k, ix, want_alignment=False)[0] is None:
        raise BandSolverError(f"selfed(X) > {k}")
    if ed_bounded(xs, ys, 4 * d, ix, want_alignment=False)[0] is None:
        return _all_inf(dict(stats, early_out="ed4d"))
    if n == 0 or m == 0:
        return _fused_solve(xs, ys, w, d, want_alignments, ix)

    lo, hi = _band_bounds(d)
    height = hi - lo + 1
    cap = d * w.denominator
    sub, ins, dele = _weight_arrays(w)

    dec = decompose_pillar(xs, k, ix, fx)
    bd = dec.boundaries
    m_ph = dec.num_phrases
    fprime = _fresh_prime(xs, ys, dec, d, ix, fy)
    anchors = sorted({0, m_ph} | fprime)
    stats.update(phrases=m_ph, anchors=len(anchors))

    def strip_matrix(i):
        x0, x1 = bd[i], bd[i + 1]
        mat = K.band_strip_matrix(xs[x0:x1], ys, sub, ins, dele, x0, lo, hi)
        if ix is not None:
            ix.charge("access", (x1 - x0) * height * height)
        return mat

    # stitched all-pairs distances from column 0, segment by segment
    d0 = np.full((height, height), BIG, dtype=np.int64)
    for t in range(height):
        if 0 <= 0 + lo + t <= m:
            d0[t, t] = 0
    seg_tables = []  # (i, j, step_matrix, power_table or None)
    for a, b in zip(anchors, anchors[1:]):
        step = strip_matrix(a)
        if b - a == 1:
            seg = (a, b, step, None)
            dij = step
        else:
            powers = monge_power_table(step, b - a)
            seg = (a, b, step, powers)
            dij = powers[b - a]
        seg_tables.append((seg, d0))
        d0 = monge_minplus(d0, dij)

    def off_ok(x, t):
        return 0 <= x + lo + t <= m

    valid0 = [t for t in range(height) if off_ok(0, t)]
    validm = [t for t in range(height) if off_ok(n, t)]
    t_src = -lo            # (0, 0)
    t_dst = m - n - lo     # (n, m)

    def pick(entries):
        best = None
        for (s, t) in entries:
            v = int(d0[s, t])
            if v < BIG and v <= cap and (best is None or v < best[0]):
                best = (v, s, t)
        return best

    corner_src = 0 <= t_src < height
    corner_dst = 0 <= t_dst < height
    want = {
        "full": [(t_src, t_dst)] if corner_src and corner_dst else [],
        "suffix_free": [(s, t_dst) for s in valid0] if corner_dst else [],
        "prefix_free": [(t_src, t) for t in validm] if corner_src else [],
        "substring": [(s, t) for s in valid0 for t in validm],
    }

    # --- path recovery -------------------------------------------------
    d0_list = [st[1] for st in seg_tables] + [d0]

    def column_vertex(idx, s_off, t_off):
        """Offset at anchor column idx on an optimal s_off -> t_off path."""
        (a, b, step, powers), dbase = seg_tables[idx - 1]
        dij = step if powers is None else powers[b - a]
        target = int(d0_list[idx][s_off, t_off])
        for smid in range(height):
            v1 = int(dbase[s_off, smid])
            v2 = int(dij[smid, t_off])
            if v1 < BIG and v2 < BIG and v1 + v2 == target:
                return smid
        raise BandSolverError("anchor midpoint not found")

    def strip_path(x0, x1, s_off, t_off):
        """Explicit point path across one strip (columns x0..x1)."""
        vals = K.band_strip_table(xs[x0:x1], ys, sub, ins, dele, x0, lo, hi, s_off)
        if ix is not None:
            ix.charge("access", (x1 - x0) * height)
        i, t = x1 - x0, t_off
        pts = [(x1, x1 + lo + t)]
        while (i, t) != (0, s_off):
            v = int(vals[i, t])
            x, y = x0 + i, x0 + i + lo + t
            if i > 0 and y >= 1 and vals[i - 1, t] < BIG and int(vals[i - 1, t]) + int(sub[xs[x - 1], ys[y - 1]]) == v:
                i -= 1
            elif i > 0 and t + 1 < height and vals[i - 1, t + 1] < BIG and int(vals[i - 1, t + 1]) + int(dele[xs[x - 1]]) == v:
                i, t = i - 1, t + 1
            elif y >= 1 and t >= 1 and vals[i, t - 1] < BIG and int(vals[i, t - 1]) + int(ins[ys[y - 1]]) == v:
                t -= 1
            else:
                raise BandSolverError("strip backtrack lost the path")
            pts.append((x0 + i, x0 + i + lo + t))
        pts.reverse()
        return pts

    def segment_path(seg, s_off, t_off):
        """Point path across an anchor segment via midpoint recursion."""
        a, b, step, powers = seg

        def dmat(length):
            return step if length == 1 else powers[length]

        def rec(ia, ib, sa, tb):
            xa, xb = bd[ia], bd[ib]
            if ib == ia:
                return [(xa, xa + lo + sa)]
            if sa == tb and int(dmat(ib - ia)[sa, tb]) == 0:
                return [(x, x + lo + sa) for x in range(xa, xb + 1)]
            if ib == ia + 1:
                return strip_path(xa, xb, sa, tb)
            half = (ib - ia) // 2
            mid = ia + half
            dl, dr = dmat(half), dmat(ib - ia - half)
            target = int(dmat(ib - ia)[sa, tb])
            smid = None
            for cand in range(height):
                v1, v2 = int(dl[sa, cand]), int(dr[cand, tb])
                if v1 < BIG and v2 < BIG and v1 + v2 == target:
                    smid = cand
                    break
            if smid is None:
                raise BandSolverError("power midpoint not found")
            return rec(ia, mid, sa, smid) + rec(mid, ib, smid, tb)[1:]

        return rec(a, b, s_off, t_off)

    def full_path(s_off, t_off):
        # anchor-column offsets along an optimal path, recovered backward
        rights = [None] * len(anchors)
        rights[0] = s_off
        rights[-1] = t_off
        cur = t_off
        for idx in range(len(anchors) - 1, 1, -1):
            cur = column_vertex(idx, s_off, cur)
            rights[idx - 1] = cur
        pts = [(0, 0 + lo + s_off)]
        for si, (seg, _base) in enumerate(seg_tables):
            part = segment_path(seg, rights[si], rights[si + 1])
            pts.extend(part[1:])
        return pts

    def result(which):
        entries = want[which]
        got = pick(entries)
        if got is None:
            return (INF, None)
        v, s_off, t_off = got
        if not want_alignments:
            return (cost_from_num(v), None)
        pts = full_path(s_off, t_off)
        p = pts[0][1]
        q = pts[-1][1]
        al = Alignment.from_points(pts, (0, n, p, q))
        return (cost_from_num(v), al)

    res = FourWayResult(result("full"), result("suffix_free"),
                        result("prefix_free"), result("substring"), stats)
    return res
