"""String primitive layer: Extract / LCP / reverse-LCP / Access / Length.

A :class:`PillarIndex` preprocesses a family of strings and then answers
longest-common-prefix and longest-common-suffix queries between arbitrary
fragments.  Two backends share the same counted interface:

* ``sa``   -- suffix array + LCP array + sparse-table RMQ over the
  concatenated family (unique negative separators); O(1) per query.
* ``scan`` -- direct character comparison; used for huge inputs where
  building the index is not worth it.  Query answers are identical.

Every primitive call bumps a counter; complexity acceptance tests read
them via :meth:`PillarIndex.stats`.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import as_symbols


class Fragment(NamedTuple):
    sid: int
    start: int
    end: int

    def __len__(self):
        return self.end - self.start


def suffix_array(seq: np.ndarray) -> np.ndarray:
    """Suffix ordering by prefix doubling (numpy lexsort)."""
    n = len(seq)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    _, cls = np.unique(seq, return_inverse=True)
    cls = cls.astype(np.int64)
    step = 1
    idx = np.arange(n)
    while step < n:
        shifted = np.full(n, -1, dtype=np.int64)
        shifted[: n - step] = cls[step:]
        order = np.lexsort((shifted, cls))
        changed = np.ones(n, dtype=np.int64)
        changed[0] = 0
        changed[1:] = (np.diff(cls[order]) != 0) | (np.diff(shifted[order]) != 0)
        new_cls = np.empty(n, dtype=np.int64)
        new_cls[order] = np.cumsum(changed)
        if new_cls.max() == n - 1:
            cls = new_cls
            break
        cls = new_cls
        step *= 2
    sa = np.empty(n, dtype=np.int64)
    sa[cls] = idx
    return sa


def lcp_array(seq: np.ndarray, sa: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """Kasai: lcp[r] = lcp(suffix sa[r], suffix sa[r+1])."""
    n = len(sa)
    lcp = np.zeros(max(n - 1, 0), dtype=np.int64)
    k = 0
    for i in range(n):
        r = rank[i]
        if r == n - 1:
            k = 0
            continue
        j = int(sa[r + 1])
        while i + k < n and j + k < n and seq[i + k] == seq[j + k]:
            k += 1
        lcp[r] = k
        if k:
            k -= 1
    return lcp


class _SparseMin:
    """Static range-minimum over an int array; O(1) queries."""

    def __init__(self, arr: np.ndarray):
        n = len(arr)
        self.n = n
        levels = max(1, n.bit_length())
        self.table = [np.asarray(arr, dtype=np.int64)]
        j = 1
        while (1 << j) <= n:
            prev = self.table[-1]
            half = 1 << (j - 1)
            self.table.append(np.minimum(prev[: n - (1 << j) + 1], prev[half: n - (1 << j) + 1 + half]))
            j += 1
        _ = levels

    def query(self, lo: int, hi: int) -> int:
        """min(arr[lo..hi]) inclusive; assumes lo <= hi."""
        span = hi - lo + 1
        j = span.bit_length() - 1
        t = self.table[j]
        return int(min(t[lo], t[hi - (1 << j) + 1]))


class _SABackend:
    def __init__(self, concat: np.ndarray):
        self.concat = concat
        self.sa = suffix_array(concat)
        self.rank = np.empty(len(concat), dtype=np.int64)
        self.rank[self.sa] = np.arange(len(concat))
        self.lcp = lcp_array(concat, self.sa, self.rank)
        self.rmq = _SparseMin(self.lcp) if len(self.lcp) else None

    def lcp_positions(self, i: int, j: int) -> int:
        if i == j:
            return len(self.concat) - i
        ri, rj = int(self.rank[i]), int(self.rank[j])
        if ri > rj:
            ri, rj = rj, ri
        return self.rmq.query(ri, rj - 1)


class PillarIndex:
    """Preprocessed string family answering LCP/LCS/Access in O(1).

    ``mode='sa'`` builds suffix structures over the concatenated family
    (plus its reverse, for longest-common-suffix queries).  ``mode='scan'``
    skips preprocessing and compares characters directly.
    """

    def __init__(self, strings, mode: str = "sa"):
        self.strings = [as_symbols(s) for s in strings]
        self.mode = mode
        self.counts = {"lcp": 0, "lcs": 0, "access": 0, "extract": 0, "length": 0}
        self._offsets = []
        if mode == "sa":
            parts = []
            off = 0
            sep = -1
            for s in self.strings:
                self._offsets.append(off)
                parts.append(s.astype(np.int64))
                parts.append(np.array([sep], dtype=np.int64))
                off += len(s) + 1
                sep -= 1
            concat = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
            self._fwd = _SABackend(concat)
            self._bwd = _SABackend(concat[::-1].copy())
            self._total = len(concat)
        elif mode == "scan":
            self._offsets = [0] * len(self.strings)
        else:
            raise ValueError(f"unknown backend {mode!r}")

    # -- counters -------------------------------------------------------
    def stats(self) -> dict:
        return dict(self.counts, total=sum(self.counts.values()))

    def reset_counters(self) -> None:
        for k in self.counts:
            self.counts[k] = 0

    def charge(self, op: str, amount: int = 1) -> None:
        """Bulk-account primitive operations done inside compiled kernels."""
        self.counts[op] += amount

    # -- primitives -------------------------------------------------------
    def whole(self, sid: int) -> Fragment:
        return Fragment(sid, 0, len(self.strings[sid]))

    def extract(self, frag: Fragment, lo: int, hi: int) -> Fragment:
        self.counts["extract"] += 1
        if not (0 <= lo <= hi <= len(frag)):
            raise IndexError("extract out of fragment bounds")
        return Fragment(frag.sid, frag.start + lo, frag.start + hi)

    def length(self, frag: Fragment) -> int:
        self.counts["length"] += 1
        return len(frag)

    def access(self, frag: Fragment, i: int) -> int:
        self.counts["access"] += 1
        if not (0 <= i < len(frag)):
            raise IndexError("access out of fragment bounds")
        return int(self.strings[frag.sid][frag.start + i])

    def chars(self, frag: Fragment) -> np.ndarray:
        """Materialize the fragment (not a counted PILLAR primitive)."""
        return self.strings[frag.sid][frag.start: frag.end]

    def _check(self, frag: Fragment) -> None:
        if not (0 <= frag.start <= frag.end <= len(self.strings[frag.sid])):
            raise IndexError("invalid fragment bounds")

    def lcp(self, s: Fragment, t: Fragment) -> int:
        """Length of the longest common prefix of the two fragments."""
        self._check(s)
        self._check(t)
        self.counts["lcp"] += 1
        bound = min(len(s), len(t))
        if bound == 0:
            return 0
        if self.mode == "scan":
            a = self.strings[s.sid]
            b = self.strings[t.sid]
            i = 0
            sa, ta = s.start, t.start
            while i < bound and a[sa + i] == b[ta + i]:
                i += 1
            return i
        i = self._offsets[s.sid] + s.start
        j = self._offsets[t.sid] + t.start
        return min(bound, self._fwd.lcp_positions(i, j))

    def lcs_backward(self, s: Fragment, t: Fragment) -> int:
        """Length of the longest common suffix of the two fragments."""
        self._check(s)
        self._check(t)
        self.counts["lcs"] += 1
        bound = min(len(s), len(t))
        if bound == 0:
            return 0
        if self.mode == "scan":
            a = self.strings[s.sid]
            b = self.strings[t.sid]
            i = 0
            se, te = s.end, t.end
            while i < bound and a[se - 1 - i] == b[te - 1 - i]:
                i += 1
            return i
        # position p in concat maps to total-1-p in the reversed text
        i = self._total - 1 - (self._offsets[s.sid] + s.end - 1)
        j = self._total - 1 - (self._offsets[t.sid] + t.end - 1)
        return min(bound, self._bwd.lcp_positions(i, j))


def build_index(strings, mode: str = "sa") -> PillarIndex:
    """Preprocess a family of symbol strings for PILLAR queries."""
    return PillarIndex(strings, mode=mode)
