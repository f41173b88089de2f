"""Top-level divide and conquer for bounded weighted edit distance.

``weighted_ed`` computes wed_{<=k}(X, Y): solve directly with the banded
DP when the distance is tiny relative to the input, otherwise split both
strings in half via a cheap band-solver call around the middle of X
(doubling the band budget until the split succeeds) and recurse.  The
split is exact: when wed(X, Y) <= k the two halves' distances add up to
the whole.

``wed_auto`` wraps it with threshold doubling, starting from a cube-root
threshold on the PILLAR engine and continuing on the standard engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .core import (
    BIG, INF, Alignment, Cost, WeightError, add_cost, as_symbols,
    cost_from_num, normalize_check, point_on_column, WeightFn,
)
from .band_solver import solve_pillar, solve_standard, FourWayResult
from .pillar import Fragment, PillarIndex, build_index
from .selfed import ed_bounded, selfed_prefix_reach, selfed_suffix_start


@dataclass
class SolverConfig:
    """Tuning knobs for the divide-and-conquer solver."""

    selfed_threshold_factor: int = 11
    engine: str = "auto"          # 'pillar' | 'standard' | 'auto'
    band_mode: str = "auto"       # forwarded to solve_standard
    index_mode: str = "auto"      # 'sa' | 'scan' | 'auto' for the pillar index

    def __post_init__(self):
        if self.selfed_threshold_factor < 1:
            raise ValueError("selfed_threshold_factor must be >= 1")


@dataclass
class SplitOutcome:
    failed: bool
    x_cut: int = 0
    y_cut: int = 0
    band_d: int = 0

    FAIL = None  # set below


SplitOutcome.FAIL = SplitOutcome(failed=True)


@dataclass
class RunStats:
    depth: int = 0
    splits: int = 0
    base_cases: int = 0
    band_calls: int = 0


def _weight_arrays(w: WeightFn):
    return (np.minimum(w.sub, BIG), np.minimum(w.ins, BIG), np.minimum(w.dele, BIG))


def _banded_leq(xs, ys, w: WeightFn, d: int, want_alignment: bool,
                ix: PillarIndex | None = None):
    """wed(X, Y) if <= d else INF, via the banded kernel, with witness."""
    n, m = len(xs), len(ys)
    if abs(n - m) > d:
        return INF, None
    sub, ins, dele = _weight_arrays(w)
    val, moves = K.banded_wed(xs, ys, sub, ins, dele, d, want_alignment)
    if ix is not None:
        ix.charge("access", (n + 1) * (2 * d + 1))
    cap = d * w.denominator
    if val >= BIG or val > cap:
        return INF, None
    if not want_alignment:
        return int(val), None
    pts = [(n, m)]
    x, y = n, m
    while (x, y) != (0, 0):
        code = moves[x, y - x + d]
        if code == 1:
            x, y = x - 1, y - 1
        elif code == 2:
            x -= 1
        elif code == 3:
            y -= 1
        else:
            raise RuntimeError("banded backtrack lost the path")
        pts.append((x, y))
    pts.reverse()
    return int(val), Alignment.from_points(pts, (0, n, 0, m))


def split(xs, ys, d: int, k: int, w: WeightFn, cfg: SolverConfig | None = None,
          ix: PillarIndex | None = None, fx: Fragment | None = None,
          fy: Fragment | None = None) -> SplitOutcome:
    """One splitting attempt: cut X at m = |X|//2 and Y at a matching point.

    Never returns a wrong partition when wed(X, Y) <= k, and never fails
    when wed(X, Y) <= d.  The cut point is read off a banded four-way
    witness around the middle of X, where a window with small self-edit
    distance guarantees every optimal alignment meets the witness.
    """
    cfg = cfg or SolverConfig()
    xs, ys = as_symbols(xs), as_symbols(ys)
    n, m_y = len(xs), len(ys)
    mid = n // 2
    budget = cfg.selfed_threshold_factor * k
    l1 = selfed_suffix_start(xs[:mid], budget, ix)
    l2 = mid + selfed_prefix_reach(xs[mid:], budget, ix)
    band_k = 2 * budget
    y_lo = max(0, l1 - d)
    y_hi = min(m_y, l2 + d)

    if l1 == 0 and l2 == n:
        res = _solve_four(xs, ys, w, d, band_k, cfg, ix, fx, fy)
        cost, al = res.full
        y_off = 0
    elif l2 == n:
        res = _solve_four(xs[l1:l2], ys[y_lo:y_hi], w, d, band_k, cfg, ix,
                          _sub_frag(fx, l1, l2), _sub_frag(fy, y_lo, y_hi))
        cost, al = res.suffix_free
        y_off = y_lo
    elif l1 == 0:
        res = _solve_four(xs[l1:l2], ys[y_lo:y_hi], w, d, band_k, cfg, ix,
                          _sub_frag(fx, l1, l2), _sub_frag(fy, y_lo, y_hi))
        cost, al = res.prefix_free
        y_off = y_lo
    else:
        res = _solve_four(xs[l1:l2], ys[y_lo:y_hi], w, d, band_k, cfg, ix,
                          _sub_frag(fx, l1, l2), _sub_frag(fy, y_lo, y_hi))
        cost, al = res.substring
        y_off = y_lo

    if cost is INF:
        return SplitOutcome.FAIL
    # witness columns are X*-relative; global middle column is mid - l1
    y_mid_local = point_on_column(al, mid - l1)
    return SplitOutcome(False, mid, y_off + y_mid_local, d)


def _sub_frag(frag: Fragment | None, lo: int, hi: int) -> Fragment | None:
    if frag is None:
        return None
    return Fragment(frag.sid, frag.start + lo, frag.start + hi)


def _solve_four(xs, ys, w, d, band_k, cfg, ix, fx, fy) -> FourWayResult:
    engine = cfg.engine
    if engine == "auto":
        # index already built and string long enough for strip powers to win
        n = len(xs)
        engine = "pillar" if (ix is not None and n > band_k ** 3) else "standard"
    if engine == "pillar":
        return solve_pillar(xs, ys, w, d, band_k, ix, fx, fy)
    return solve_standard(xs, ys, w, d, band_k, mode=cfg.band_mode)


def weighted_ed(xs, ys, k: int, w: WeightFn, cfg: SolverConfig | None = None,
                want_alignment: bool = True, stats: RunStats | None = None,
                ix: PillarIndex | None = None):
    """wed(X, Y) with witness if it is at most k, else (INF, None).

    The threshold k is an integer; costs are exact rationals over the
    weight function's denominator.
    """
    cfg = cfg or SolverConfig()
    if k < 0:
        raise ValueError("threshold must be non-negative")
    if not normalize_check(w)["normalized"]:
        raise WeightError("weighted_ed needs a normalized weight function")
    xs, ys = as_symbols(xs), as_symbols(ys)
    stats = stats if stats is not None else RunStats()
    if cfg.engine == "pillar" and ix is None:
        mode = "sa" if cfg.index_mode == "auto" else cfg.index_mode
        ix = build_index([xs, ys], mode=mode)
    fx = ix.whole(0) if ix is not None else None
    fy = ix.whole(1) if ix is not None else None
    cap = k * w.denominator

    def rec(xlo, xhi, ylo, yhi, depth):
        stats.depth = max(stats.depth, depth)
        xp = xs[xlo:xhi]
        yp = ys[ylo:yhi]
        if ix is not None:
            ix.charge("lcp")
        if np.array_equal(xp, yp):
            return 0, (Alignment.identity(len(xp)) if want_alignment else None)
        if k == 0:
            return INF, None
        node_n = max(len(xp) + len(yp), 1)
        d = -(-2 * k * k // node_n)
        d = max(1, min(d, k))
        # cheap unweighted reject before the O(n d) banded check
        if ed_bounded(xp, yp, d, ix, want_alignment=False)[0] is not None:
            stats.base_cases += 1
            val, al = _banded_leq(xp, yp, w, d, want_alignment, ix)
            if val is not INF:
                return val, al
        if d >= k:
            return INF, None
        sfx = _sub_frag(fx, xlo, xhi)
        sfy = _sub_frag(fy, ylo, yhi)
        while True:
            stats.band_calls += 1
            out = split(xp, yp, d, k, w, cfg, ix, sfx, sfy)
            if not out.failed:
                break
            if d >= k:
                return INF, None
            d = min(k, 2 * d)
        stats.splits += 1
        c1, a1 = rec(xlo, xlo + out.x_cut, ylo, ylo + out.y_cut, depth + 1)
        if c1 is INF or c1 > cap:
            return INF, None
        c2, a2 = rec(xlo + out.x_cut, xhi, ylo + out.y_cut, yhi, depth + 1)
        if c2 is INF:
            return INF, None
        total = c1 + c2
        if total > cap:
            return INF, None
        al = _join(a1, a2, out.x_cut, out.y_cut) if want_alignment else None
        return total, al

    val, al = rec(0, len(xs), 0, len(ys), 0)
    if val is INF:
        return INF, None
    return val, al


def _join(a1: Alignment, a2: Alignment, dx: int, dy: int) -> Alignment:
    b = a2.shift(dx, dy)
    x0, _, y0, _ = a1.domain
    _, x1, _, y1 = b.domain
    pts = a1.breakpoints + b.breakpoints[1:]
    if len(a1.breakpoints) and a1.breakpoints[-1] != b.breakpoints[0]:
        raise RuntimeError("split parts do not share the cut point")
    if len(pts) == 1:
        return Alignment(pts, (x0, x1, y0, y1))
    return Alignment(pts, (x0, x1, y0, y1))


def wed_auto(xs, ys, w: WeightFn, cfg: SolverConfig | None = None,
             want_alignment: bool = False, stats: RunStats | None = None):
    """Exact wed(X, Y) by threshold doubling.

    Starts at a cube-root threshold with the PILLAR engine, then doubles
    on the standard engine; terminates via the generic upper bound
    (|X| + |Y|) * max finite weight once everything else returned INF.
    """
    cfg = cfg or SolverConfig()
    xs, ys = as_symbols(xs), as_symbols(ys)
    if np.array_equal(xs, ys):
        return 0, (Alignment.identity(len(xs)) if want_alignment else None)
    n = max(len(xs), len(ys), 2)
    logn = max(1, (n - 1).bit_length())
    k = max(1, round((n / logn ** 2) ** (1 / 3.0)))
    bound_num = (len(xs) + len(ys)) * w.max_finite_num
    first = True
    while True:
        engine = cfg.engine
        index_mode = cfg.index_mode
        if cfg.engine == "auto":
            engine = "pillar" if first else "standard"
            if index_mode == "auto":
                index_mode = "sa" if n <= (1 << 16) else "scan"
        sub_cfg = SolverConfig(cfg.selfed_threshold_factor, engine,
                               cfg.band_mode, index_mode)
        val, al = weighted_ed(xs, ys, k, w, sub_cfg, want_alignment, stats)
        if val is not INF:
            return val, al
        if k * w.denominator >= bound_num:
            return INF, None
        first = False
        k *= 2


def wed_leq_k(xs, ys, k: int, w: WeightFn, **kw):
    """Library entry point: wed(X, Y) if <= k else INF."""
    return weighted_ed(xs, ys, k, w, **kw)


def wed_exact(xs, ys, w: WeightFn, **kw):
    """Library entry point: exact wed(X, Y) (INF only if no finite alignment)."""
    return wed_auto(xs, ys, w, **kw)
