"""Core domain types: weight functions, exact costs, and alignments.

Costs are exact rationals represented as integer numerators over a single
denominator owned by the weight function.  Infinity is the module-level
sentinel ``INF``; it absorbs addition and compares greater than every
finite cost.  No floating point is used anywhere.

Strings are plain sequences of symbol ids (ints in ``[0, alphabet_size)``);
numpy int32 arrays are the preferred carrier, but any indexable sequence
works for the pure-python paths.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class _Infinity:
    """Sentinel for an infinite cost.  Totally ordered above all ints."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is INF

    def __gt__(self, other):
        return other is not INF

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return INF

    __radd__ = __add__

    def __hash__(self):
        return hash("wedist-INF")


INF = _Infinity()

#: numerator values are ints, infinity is the INF sentinel
Cost = int | _Infinity

# int64 sentinel used by the numpy/numba kernels; kernels only ever add a
# few in-range values at once, so sums stay below 2**63 and anything >= BIG
# decodes as INF.  Finite numerators are kept far below BIG by the
# int64-safety guards in the kernels' callers.
BIG = 1 << 61


def add_cost(a: Cost, b: Cost) -> Cost:
    if a is INF or b is INF:
        return INF
    return a + b


def min_cost(*vals: Cost) -> Cost:
    best: Cost = INF
    for v in vals:
        if v is not INF and (best is INF or v < best):
            best = v
    return best


def cost_num(c: Cost) -> int:
    """Encode a cost as an int64-safe numerator (INF -> BIG)."""
    return BIG if c is INF else c


def cost_from_num(n: int) -> Cost:
    return INF if n >= BIG else int(n)


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class WeightFn:
    """Weight oracle over (alphabet + epsilon)^2 with exact rational values.

    ``sub[a][b]`` is the numerator of the cost of aligning symbol a to b,
    ``dele[a]`` of deleting a (a -> eps), ``ins[b]`` of inserting b
    (eps -> b); all over the shared ``denominator``.  A numerator of
    ``BIG`` or more encodes an infinite weight.
    """

    alphabet_size: int
    denominator: int
    sub: np.ndarray        # (A, A) int64
    ins: np.ndarray        # (A,) int64
    dele: np.ndarray       # (A,) int64

    def __post_init__(self):
        a = self.alphabet_size
        if self.denominator < 1:
            raise WeightError("denominator must be positive")
        if self.sub.shape != (a, a) or self.ins.shape != (a,) or self.dele.shape != (a,):
            raise WeightError("weight table shapes do not match alphabet_size")
        if (self.sub < 0).any() or (self.ins < 0).any() or (self.dele < 0).any():
            raise WeightError("weights must be non-negative")
        if (np.diag(self.sub) != 0).any():
            raise WeightError("w(a, a) must be 0 for every symbol")

    # -- scalar access -------------------------------------------------
    def w_sub(self, a: int, b: int) -> Cost:
        return cost_from_num(int(self.sub[a, b]))

    def w_del(self, a: int) -> Cost:
        return cost_from_num(int(self.dele[a]))

    def w_ins(self, b: int) -> Cost:
        return cost_from_num(int(self.ins[b]))

    @property
    def symmetric(self) -> bool:
        return bool((self.sub == self.sub.T).all() and (self.ins == self.dele).all())

    @property
    def max_finite_num(self) -> int:
        vals = [int(t[t < BIG].max(initial=0)) for t in (self.sub, self.ins, self.dele)]
        return max(vals)

    def to_json_dict(self) -> dict:
        def enc(arr):
            return [(-1 if v >= BIG else int(v)) for v in arr.ravel()]

        a = self.alphabet_size
        return {
            "alphabet_size": a,
            "denominator": self.denominator,
            "sub": [enc(self.sub[i]) for i in range(a)],
            "ins": enc(self.ins),
            "del": enc(self.dele),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def make_weight_fn(alphabet_size: int, denominator: int,
                   sub, ins, dele) -> WeightFn:
    """Build a WeightFn from nested lists / arrays; -1 encodes infinity."""
    def conv(x, shape):
        arr = np.array(x, dtype=np.int64).reshape(shape)
        arr[arr < 0] = BIG
        return arr

    a = alphabet_size
    return WeightFn(a, denominator, conv(sub, (a, a)), conv(ins, (a,)), conv(dele, (a,)))


def unit_weights(alphabet_size: int) -> WeightFn:
    """Levenshtein weights: every edit costs 1."""
    sub = np.ones((alphabet_size, alphabet_size), dtype=np.int64)
    np.fill_diagonal(sub, 0)
    one = np.ones(alphabet_size, dtype=np.int64)
    return WeightFn(alphabet_size, 1, sub, one.copy(), one.copy())


def weight_fn_from_json(text: str) -> WeightFn:
    d = json.loads(text)
    return make_weight_fn(d["alphabet_size"], d["denominator"], d["sub"], d["ins"], d["del"])


def normalize_check(w: WeightFn) -> dict:
    """Check w(a,a)=0 and w(a,b) >= 1 (i.e. >= denominator) for all a != b.

    Returns {"normalized": bool, "violations": [(a, b), ...]} where symbol
    index ``alphabet_size`` stands for epsilon.
    """
    eps = w.alphabet_size
    den = w.denominator
    violations = []
    bad = np.argwhere((w.sub < den) & ~np.eye(w.alphabet_size, dtype=bool))
    violations.extend((int(a), int(b)) for a, b in bad)
    violations.extend((int(a), eps) for a in np.flatnonzero(w.dele < den))
    violations.extend((eps, int(b)) for b in np.flatnonzero(w.ins < den))
    return {"normalized": not violations, "violations": violations}


def as_symbols(s: Iterable[int] | np.ndarray) -> np.ndarray:
    """Normalize a symbol sequence to an int32 numpy array."""
    if isinstance(s, np.ndarray) and s.dtype == np.int32:
        return s
    return np.asarray(list(s) if not isinstance(s, np.ndarray) else s, dtype=np.int32)


def check_symbols(s: np.ndarray, w: WeightFn) -> None:
    if len(s) and (int(s.min()) < 0 or int(s.max()) >= w.alphabet_size):
        raise WeightError("symbol id out of range for alphabet")


# ---------------------------------------------------------------------------
# Alignments
# ---------------------------------------------------------------------------

class AlignmentError(ValueError):
    pass


@dataclass(frozen=True)
class Alignment:
    """Breakpoint representation of an alignment X[x0..x1) -> Y[y0..y1).

    ``breakpoints`` is an ordered tuple of (x, y) pairs including both
    domain corners.  Between consecutive breakpoints (px, py) -> (x, y)
    the path makes one edit (or none, for pure-match anchor segments)
    followed by a run of matches; expansion recovers every point.
    Consecutive pairs must satisfy |dx - dy| <= 1.
    """

    breakpoints: tuple
    domain: tuple  # (x0, x1, y0, y1)

    def __post_init__(self):
        bps = self.breakpoints
        x0, x1, y0, y1 = self.domain
        if not bps:
            raise AlignmentError("alignment needs at least one breakpoint")
        if bps[0] != (x0, y0) or bps[-1] != (x1, y1):
            raise AlignmentError("breakpoints must start/end at the domain corners")
        for (px, py), (x, y) in zip(bps, bps[1:]):
            dx, dy = x - px, y - py
            if dx < 0 or dy < 0 or max(dx, dy) < 1 or abs(dx - dy) > 1:
                raise AlignmentError(f"malformed breakpoint step ({px},{py})->({x},{y})")

    @staticmethod
    def identity(n: int) -> "Alignment":
        return Alignment(((0, 0), (n, n)) if n else ((0, 0),), (0, n, 0, n))

    @staticmethod
    def from_points(points: Sequence[tuple], domain=None) -> "Alignment":
        """Compress a full point path to its breakpoint representation."""
        if not points:
            raise AlignmentError("empty point path")
        if domain is None:
            domain = (points[0][0], points[-1][0], points[0][1], points[-1][1])
        keep = [points[0]]
        for t in range(1, len(points) - 1):
            px, py = points[t]
            nx, ny = points[t + 1]
            if not (nx == px + 1 and ny == py + 1):
                keep.append(points[t])
        if len(points) > 1:
            keep.append(points[-1])
        return Alignment(tuple(keep), domain)

    def shift(self, dx: int, dy: int) -> "Alignment":
        x0, x1, y0, y1 = self.domain
        return Alignment(tuple((x + dx, y + dy) for x, y in self.breakpoints),
                         (x0 + dx, x1 + dx, y0 + dy, y1 + dy))

    def transpose(self) -> "Alignment":
        x0, x1, y0, y1 = self.domain
        return Alignment(tuple((y, x) for x, y in self.breakpoints), (y0, y1, x0, x1))


def expand_breakpoints(a: Alignment) -> list:
    """Full monotone point sequence of the alignment.

    Between consecutive breakpoints (px,py),(x,y) the in-between points are
    (x-d, y-d) for d in [0, max(x-px, y-py)), i.e. one leading edit followed
    by a matched diagonal run.
    """
    bps = a.breakpoints
    out = [bps[0]]
    for (px, py), (x, y) in zip(bps, bps[1:]):
        span = max(x - px, y - py)
        for d in range(span - 1, -1, -1):
            out.append((x - d, y - d))
    return out


def alignment_steps(a: Alignment):
    """Yield (kind, x, y) per edge: kind in {'del','ins','diag'}."""
    pts = expand_breakpoints(a)
    for (px, py), (x, y) in zip(pts, pts[1:]):
        if x == px + 1 and y == py + 1:
            yield ("diag", px, py)
        elif x == px + 1:
            yield ("del", px, py)
        else:
            yield ("ins", px, py)


def alignment_cost(xs, ys, a: Alignment, w: WeightFn) -> Cost:
    """Exact cost of alignment ``a`` of xs[x0..x1) onto ys[y0..y1) under w."""
    x0, x1, y0, y1 = a.domain
    if not (0 <= x0 <= x1 <= len(xs) and 0 <= y0 <= y1 <= len(ys)):
        raise AlignmentError("alignment domain outside string bounds")
    total: Cost = 0
    for kind, x, y in alignment_steps(a):
        if kind == "diag":
            total = add_cost(total, w.w_sub(int(xs[x]), int(ys[y])))
        elif kind == "del":
            total = add_cost(total, w.w_del(int(xs[x])))
        else:
            total = add_cost(total, w.w_ins(int(ys[y])))
    return total


def unit_cost(xs, ys, a: Alignment) -> int:
    """Number of non-match edits made by the alignment."""
    c = 0
    for kind, x, y in alignment_steps(a):
        if kind != "diag":
            c += 1
        elif int(xs[x]) != int(ys[y]):
            c += 1
    return c


def compose_alignments(a: Alignment, b: Alignment) -> Alignment:
    """Composition X -> Z of a: X -> Y with b: Y -> Z.

    Follows the standard characterization: x is aligned to z iff some y is
    aligned to x by ``a`` and to z by ``b``; deletions and insertions
    propagate through.
    """
    ax0, ax1, ay0, ay1 = a.domain
    by0, by1, az0, az1 = b.domain
    if (ay0, ay1) != (by0, by1):
        raise AlignmentError("composition domain mismatch: a's Y-range != b's Y-domain")
    sa = list(alignment_steps(a))
    sb = list(alignment_steps(b))
    ia = ib = 0
    pts = [(ax0, az0)]
    x, z = ax0, az0
    while ia < len(sa) or ib < len(sb):
        if ib < len(sb) and sb[ib][0] == "ins":
            z += 1
            ib += 1
            pts.append((x, z))
        elif ia < len(sa) and sa[ia][0] == "del":
            x += 1
            ia += 1
            pts.append((x, z))
        else:
            # both sides advance through the same y
            ka = sa[ia][0]
            kb = sb[ib][0]
            ia += 1
            ib += 1
            if ka == "diag" and kb == "diag":
                x += 1
                z += 1
                pts.append((x, z))
            elif ka == "diag":   # b deletes y -> x is deleted
                x += 1
                pts.append((x, z))
            elif kb == "diag":   # a inserts y -> z is inserted
                z += 1
                pts.append((x, z))
            # a inserts y and b deletes y: no move
    if (x, z) != (ax1, az1):
        raise AlignmentError("composition did not reach the far corner")
    return Alignment.from_points(pts, (ax0, ax1, az0, az1))


def split_alignment(a: Alignment, at: tuple) -> tuple:
    """Split at an on-path point (x, y) into prefix and suffix alignments."""
    x, y = at
    pts = expand_breakpoints(a)
    if (x, y) not in set(pts):
        raise AlignmentError(f"point ({x},{y}) is not on the alignment")
    i = pts.index((x, y))
    x0, x1, y0, y1 = a.domain
    left = Alignment.from_points(pts[: i + 1], (x0, x, y0, y))
    right = Alignment.from_points(pts[i:], (x, x1, y, y1))
    return left, right


def point_on_column(a: Alignment, x: int) -> int:
    """Smallest y with (x, y) on the alignment path."""
    x0, x1, y0, y1 = a.domain
    if not (x0 <= x <= x1):
        raise AlignmentError("column outside alignment domain")
    best = None
    prev = a.breakpoints[0]
    if prev[0] == x:
        best = prev[1]
    for cur in a.breakpoints[1:]:
        (px, py), (cx, cy) = prev, cur
        if px <= x <= cx:
            run = min(cx - px, cy - py)
            if x > cx - run:
                cand = cy - (cx - x)
            elif x == px:
                cand = py
            elif x == cx - run:  # landing point right after the edit
                cand = cy - run
            else:
                cand = None
            if cand is not None:
                best = cand if best is None else min(best, cand)
        prev = cur
    if best is None:
        # x strictly inside a horizontal-edit segment; walk explicitly
        for (ex, ey) in expand_breakpoints(a):
            if ex == x:
                return ey
        raise AlignmentError("column not visited")
    return best


# ---------------------------------------------------------------------------
# CIGAR encoding
# ---------------------------------------------------------------------------

def alignment_to_cigar(xs, ys, a: Alignment) -> str:
    """Run-length string over {=, X, I, D} (match/substitute/insert/delete)."""
    out = []
    prev = None
    count = 0
    for kind, x, y in alignment_steps(a):
        if kind == "diag":
            op = "=" if int(xs[x]) == int(ys[y]) else "X"
        elif kind == "del":
            op = "D"
        else:
            op = "I"
        if op == prev:
            count += 1
        else:
            if prev is not None:
                out.append(f"{count}{prev}")
            prev, count = op, 1
    if prev is not None:
        out.append(f"{count}{prev}")
    return "".join(out)


def cigar_to_alignment(cigar: str, domain: tuple) -> Alignment:
    x0, x1, y0, y1 = domain
    pts = [(x0, y0)]
    x, y = x0, y0
    num = ""
    for ch in cigar:
        if ch.isdigit():
            num += ch
            continue
        n = int(num)
        num = ""
        for _ in range(n):
            if ch in "=X":
                x, y = x + 1, y + 1
            elif ch == "D":
                x += 1
            elif ch == "I":
                y += 1
            else:
                raise AlignmentError(f"bad CIGAR op {ch!r}")
            pts.append((x, y))
    if (x, y) != (x1, y1):
        raise AlignmentError("CIGAR does not span the domain")
    return Alignment.from_points(pts, domain)


@dataclass(frozen=True)
class Band:
    """Diagonal window: vertex (x, y) admitted iff lo <= y - x <= hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("band lo > hi")
