"""Phrase decompositions driven by a cheap self-alignment.

Two variants with the same skeleton: a left-to-right scan that appends
phrases, classifying each as fresh or as a copy of earlier content, and
deciding each step from where the self-alignment witness matches a window
perfectly.

* :func:`decompose_pillar`: phrase lengths in [k, 2k), at most 2k fresh
  phrases, every non-fresh phrase equals its immediate predecessor.
* :func:`decompose_std`: phrase lengths in [l, 2l), at most 3k fresh
  phrases, every non-fresh phrase has an earlier source phrase with equal
  content at distance at most max(2l - 1, k).
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np

from .core import Alignment, as_symbols
from .pillar import Fragment, PillarIndex
from .selfed import selfed_bounded


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class PhraseDecomposition:
    boundaries: tuple          # x_0 = 0 <= ... <= x_m = |X|
    fresh: frozenset           # phrase indices without a usable source
    sources: dict | None       # std variant: non-fresh phrase -> source phrase
    phrase_len_lo: int
    phrase_len_hi: int         # half-open: lengths in [lo, hi)

    @property
    def num_phrases(self) -> int:
        return len(self.boundaries) - 1

    def phrase(self, i: int) -> tuple:
        return self.boundaries[i], self.boundaries[i + 1]

    def to_json_dict(self) -> dict:
        return {
            "boundaries": list(self.boundaries),
            "fresh": sorted(self.fresh),
            "sources": None if self.sources is None else
                       {str(i): s for i, s in sorted(self.sources.items())},
            "phrase_len_lo": self.phrase_len_lo,
            "phrase_len_hi": self.phrase_len_hi,
        }


@dataclass(frozen=True)
class _Run:
    """Maximal matched diagonal stretch of a self-alignment witness.

    Covers columns [start, end) at shift s >= 1 (aligning X[c] to
    X[c - s]).  ``left_closed`` is False when an insertion immediately
    precedes the run, in which case a window starting exactly at
    ``start`` is not matched perfectly (its image picks up the inserted
    character).
    """
    start: int
    end: int
    shift: int
    left_closed: bool


def _matched_runs(al: Alignment) -> list:
    """Run table of a selfed_bounded witness (pre-edit breakpoint points)."""
    runs = []
    bps = al.breakpoints
    for (px, py), (x, y) in zip(bps, bps[1:]):
        dx, dy = x - px, y - py
        if dy == dx + 1:            # insertion, then matches
            start, closed = px, False
        else:                       # deletion or substitution, then matches
            start, closed = px + 1, True
        if x - start > 0:
            shift = x - y
            if shift < 1:
                raise DecompositionError("self-alignment run on the main diagonal")
            runs.append(_Run(start, x, shift, closed))
    return runs


def _run_covering(runs: list, starts: list, a: int, b: int):
    """Run matching window [a, b) perfectly, or None."""
    i = bisect_right(starts, a) - 1
    if i < 0:
        return None
    r = runs[i]
    if r.end >= b and (a > r.start or r.left_closed):
        return r
    return None


class _LcpSource:
    """lcp(X[a..), X[b..)) either via a PillarIndex fragment or by scan."""

    def __init__(self, xs, ix: PillarIndex | None, frag: Fragment | None):
        self.xs = xs
        self.ix = ix
        self.frag = frag if frag is not None else (ix.whole(0) if ix is not None else None)

    def lcp(self, a: int, b: int) -> int:
        n = len(self.xs)
        if self.ix is not None:
            f = self.frag
            return self.ix.lcp(Fragment(f.sid, f.start + a, f.end),
                               Fragment(f.sid, f.start + b, f.end))
        xs = self.xs
        i = 0
        while a + i < n and b + i < n and xs[a + i] == xs[b + i]:
            i += 1
        return i


def _witness(xs, k, ix, frag):
    cost, al = selfed_bounded(xs, k, ix)
    if cost is None:
        raise DecompositionError(f"selfed(X) > {k}; decomposition precondition violated")
    return al


def decompose_pillar(xs, k: int, ix: PillarIndex | None = None,
                     frag: Fragment | None = None) -> PhraseDecomposition:
    """Decomposition with phrase lengths in [k, 2k) and <= 2k fresh phrases.

    Requires selfed(X) <= k (raises DecompositionError otherwise).  Every
    non-fresh phrase equals its immediate predecessor phrase.
    """
    xs = as_symbols(xs)
    n = len(xs)
    if k < 1:
        raise DecompositionError("k must be at least 1")
    if n == 0:
        return PhraseDecomposition((0,), frozenset(), None, k, 2 * k)
    if n < 2 * k:
        return PhraseDecomposition((0, n), frozenset({0}), None, k, 2 * k)
    al = _witness(xs, k, ix, frag)
    runs = _matched_runs(al)
    starts = [r.start for r in runs]
    lcpq = _LcpSource(xs, ix, frag)

    bd = [0]
    fresh = set()
    while bd[-1] < n:
        i = len(bd) - 1
        x = bd[-1]
        if i > 0 and n - bd[i - 1] < 2 * k:
            bd[i] = n                     # extend phrase i-1 to the end
            fresh.add(i - 1)
        elif n - x < 2 * k:
            if i == 0:
                bd.append(n)              # degenerate: lone short input
                fresh.add(0)
            else:
                bd.append(n)              # append, then balance with phrase i-1
                bd[i] = (bd[i - 1] + n) // 2
                fresh.add(i - 1)
                fresh.add(i)
        else:
            run = _run_covering(runs, starts, x, x + 2 * k - 1)
            if run is None:
                bd.append(x + 2 * k - 1)
                fresh.add(i)
            else:
                s = run.shift
                p = s * (-(-k // s))      # smallest multiple of s that is >= k
                lam = lcpq.lcp(x, x - s)
                r = min(lam, run.end - x) // p
                if r < 1:
                    raise DecompositionError("perfect window shorter than one period")
                for q in range(1, r + 1):
                    bd.append(x + p * q)
                fresh.add(i)
    return PhraseDecomposition(tuple(bd), frozenset(fresh), None, k, 2 * k)


def decompose_std(xs, k: int, ell: int, ix: PillarIndex | None = None,
                  frag: Fragment | None = None) -> PhraseDecomposition:
    """Decomposition with lengths in [l, 2l), <= 3k fresh, nearby sources.

    Requires selfed(X) <= k.  Non-fresh phrase i records a source phrase
    i' < i with identical content and x_i - x_{i'} <= max(2l - 1, k).
    """
    xs = as_symbols(xs)
    n = len(xs)
    if k < 1 or ell < 1:
        raise DecompositionError("k and l must be at least 1")
    if n == 0:
        return PhraseDecomposition((0,), frozenset(), {}, ell, 2 * ell)
    if n < 2 * ell:
        return PhraseDecomposition((0, n), frozenset({0}), {}, ell, 2 * ell)
    al = _witness(xs, k, ix, frag)
    runs = _matched_runs(al)
    starts = [r.start for r in runs]

    bd = [0]
    sources: dict = {}
    fresh = set()

    def mark_fresh(j):
        fresh.add(j)
        sources.pop(j, None)

    def content_equal(a, b, length):
        return bool(np.array_equal(xs[a: a + length], xs[b: b + length]))

    while bd[-1] < n:
        i = len(bd) - 1
        x = bd[-1]
        if i > 0 and n - bd[i - 1] < 2 * ell:
            bd[i] = n
            mark_fresh(i - 1)
        elif n - x < 2 * ell:
            if i == 0:
                bd.append(n)
                mark_fresh(0)
            else:
                bd.append(n)
                bd[i] = (bd[i - 1] + n) // 2
                mark_fresh(i - 1)
                mark_fresh(i)
        else:
            run = _run_covering(runs, starts, x, x + 2 * ell - 1)
            if run is None:
                bd.append(x + 2 * ell - 1)
                mark_fresh(i)
            elif run.shift < 2 * ell:
                s = run.shift
                p = s * (-(-ell // s))
                bd.append(x + p)
                if i > 0 and x - bd[i - 1] == p and content_equal(x - p, x, p):
                    sources[i] = i - 1
                else:
                    mark_fresh(i)
            else:
                s = run.shift
                src_pos = x - s
                ip = bisect_right(bd, src_pos) - 1
                if ip >= i:
                    raise DecompositionError("source position not strictly earlier")
                if bd[ip] == src_pos:
                    length = bd[ip + 1] - bd[ip]
                    bd.append(x + length)
                    sources[i] = ip
                elif i > 0 and bd[ip + 1] + s - bd[i - 1] < 2 * ell:
                    bd[i] = bd[ip + 1] + s
                    mark_fresh(i - 1)
                else:
                    bd.append(bd[ip + 1] + s)
                    bd[i] = (bd[i - 1] + bd[i + 1]) // 2
                    mark_fresh(i - 1)
                    mark_fresh(i)
    return PhraseDecomposition(tuple(bd), frozenset(fresh), sources, ell, 2 * ell)


def validate_decomposition(xs, dec: PhraseDecomposition, k: int) -> None:
    """Assert every structural invariant of a decomposition; raise on failure."""
    xs = as_symbols(xs)
    n = len(xs)
    bd = dec.boundaries
    if bd[0] != 0 or bd[-1] != n:
        raise AssertionError("boundaries do not cover the string")
    if any(b >= c for b, c in zip(bd, bd[1:])):
        raise AssertionError("empty or reversed phrase")
    m = dec.num_phrases
    if m > 1 or (m == 1 and n >= dec.phrase_len_lo):
        for i in range(m):
            length = bd[i + 1] - bd[i]
            if not (dec.phrase_len_lo <= length < dec.phrase_len_hi):
                raise AssertionError(f"phrase {i} length {length} outside window")
    if dec.sources is None:
        if len(dec.fresh) > 2 * k:
            raise AssertionError("more than 2k fresh phrases")
        for i in range(m):
            if i in dec.fresh:
                continue
            a0, a1 = dec.phrase(i)
            b0, b1 = dec.phrase(i - 1)
            if a1 - a0 != b1 - b0 or not np.array_equal(xs[a0:a1], xs[b0:b1]):
                raise AssertionError(f"non-fresh phrase {i} differs from predecessor")
    else:
        if len(dec.fresh) > 3 * k:
            raise AssertionError("more than 3k fresh phrases")
        bound = max(2 * dec.phrase_len_lo - 1, k)
        for i in range(m):
            if i in dec.fresh:
                continue
            ip = dec.sources.get(i)
            if ip is None or ip >= i:
                raise AssertionError(f"non-fresh phrase {i} lacks an earlier source")
            a0, a1 = dec.phrase(i)
            b0, b1 = dec.phrase(ip)
            if a1 - a0 != b1 - b0 or not np.array_equal(xs[a0:a1], xs[b0:b1]):
                raise AssertionError(f"phrase {i} differs from its source {ip}")
            if a0 - b0 > bound:
                raise AssertionError(f"source of phrase {i} is too far ({a0 - b0} > {bound})")
