"""Generators for structured lower-bound instances with closed-form distances.

Three layers, mirroring how the constructions build on one another:

* a two-matrix gadget turning min_j(A[i,j] + B[j,l]) into a weighted edit
  distance between a selector string and a fixed target string;
* a three-matrix gadget with blocks and marker characters whose optimal
  cost encodes min over (alpha, j) of A + B + C entries, plus a normalized
  (metric) weight function scaled into [1, 2];
* a combiner that concatenates a whole batch into one pair of strings with
  padded separators so that the batched decision and the single-pair
  decision agree exactly.

Every generated instance carries exact integer numerators; the closed
forms are checked against the quadratic DP oracle in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import BIG, WeightFn, as_symbols, make_weight_fn


class GadgetError(ValueError):
    pass


def _as_matrix(mat, rows, cols, e, name):
    arr = np.array(mat, dtype=np.int64)
    if arr.shape != (rows, cols):
        raise GadgetError(f"{name} must be {rows}x{cols}")
    if (np.abs(arr) > e).any():
        raise GadgetError(f"{name} entries exceed |{e}|")
    return arr


# ---------------------------------------------------------------------------
# two-matrix gadget
# ---------------------------------------------------------------------------

@dataclass
class TwoMatrixGadget:
    xs: list                   # selector strings X_0 .. X_{r-1}
    y: np.ndarray
    weights: WeightFn
    p: int
    q: int
    r: int
    scale_d: int
    scale_f: int

    def predicted(self, a, b, ell: int, i: int) -> int:
        """Closed-form distance of X_ell[i..|X|-i) vs Y (numerator)."""
        best = min(int(a[i, j]) + int(b[j, ell]) for j in range(self.q))
        return len(self.y) * self.scale_f + (self.p - i) * (self.q + 1) * self.scale_d + best


def gen_two_matrix_gadget(a, b, e: int) -> TwoMatrixGadget:
    """Strings and weights encoding min_j(A[i,j] + B[j,l]) as a distance.

    X_l has length 2p+1 and differs from X_{l'} in exactly one position
    (the selector character); Y has length 2p+q.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    p, q = a.shape
    q2, r = b.shape
    if q2 != q:
        raise GadgetError("inner dimensions of A and B disagree")
    _as_matrix(a, p, q, e, "A")
    _as_matrix(b, q, r, e, "B")

    n_x = 2 * p + 1
    n_y = 2 * p + q
    big_l = n_x + n_y + 1
    scale_d = e * big_l + 1
    scale_f = scale_d * big_l + 1

    # symbol ids: x_0..x_{p-1}, selectors x_p^(0..r-1), x_{p+1}..x_{2p}, y_0..y_{2p+q-1}
    def x_row(i):
        return i

    def x_sel(ell):
        return p + ell

    def x_tail(i):          # x_{p+i} for i in [1, p]
        return p + r + i - 1

    def y_sym(j):
        return 2 * p + r + j

    asize = (2 * p + r) + n_y
    a_pad = np.vstack([a, np.zeros((1, q), dtype=np.int64)])  # A[p, j] = 0
    sub = np.full((asize, asize), 2 * scale_f, dtype=np.int64)
    np.fill_diagonal(sub, 0)
    for i in range(p):
        for j in range(q):
            sub[x_row(i), y_sym(i + j)] = scale_f + int(a_pad[i, j] - a_pad[i + 1, j]) + (q - j) * scale_d
    for ell in range(r):
        for j in range(q):
            sub[x_sel(ell), y_sym(p + j)] = scale_f + int(b[j, ell])
    for i in range(1, p + 1):
        for j in range(q):
            sub[x_tail(i), y_sym(p + i + j)] = scale_f + (j + 1) * scale_d
    ins = np.full(asize, scale_f, dtype=np.int64)
    dele = np.full(asize, scale_f, dtype=np.int64)
    w = WeightFn(asize, 1, sub, ins, dele)

    xs = []
    for ell in range(r):
        s = [x_row(i) for i in range(p)] + [x_sel(ell)] + [x_tail(i) for i in range(1, p + 1)]
        xs.append(np.array(s, dtype=np.int32))
    y = np.array([y_sym(j) for j in range(n_y)], dtype=np.int32)
    return TwoMatrixGadget(xs, y, w, p, q, r, scale_d, scale_f)


# ---------------------------------------------------------------------------
# three-matrix gadget
# ---------------------------------------------------------------------------

@dataclass
class GadgetParams:
    """Dimensions, weight bound, matrices, and the derived scale chain."""

    p: int
    q: int
    r: int
    tau: int
    e: int
    a: np.ndarray              # p x q
    b: np.ndarray              # q x r
    c: np.ndarray              # r x p
    p_tau: int = field(init=False)
    len_x: int = field(init=False)
    len_y: int = field(init=False)
    scale_d: int = field(init=False)
    scale_i: int = field(init=False)
    scale_f: int = field(init=False)
    scale_k: int = field(init=False)

    def __post_init__(self):
        if not (1 <= self.tau <= self.p):
            raise GadgetError("tau must be in [1, p]")
        self.a = _as_matrix(self.a, self.p, self.q, self.e, "A")
        self.b = _as_matrix(self.b, self.q, self.r, self.e, "B")
        self.c = _as_matrix(self.c, self.r, self.p, self.e, "C")
        self.p_tau = -(-self.p // self.tau)
        pt, tau, q = self.p_tau, self.tau, self.q
        self.len_x = 1 + tau * (2 * pt + 2)
        self.len_y = 2 * ((tau - 1) * (2 * pt + 2) + pt) + (2 * pt + q)
        big_l = self.len_x + self.len_y + 1
        self.scale_d = self.e * big_l + 1
        self.scale_i = self.scale_d * big_l + 1
        self.scale_f = self.scale_i * big_l + 1
        self.scale_k = self.scale_f * (self.len_x + self.len_y)

    def padded_row(self, idx: int) -> int:
        """Row index into A (rows beyond p-1 repeat the last row)."""
        return min(idx, self.p - 1)

    def triple_min(self, ell: int, i: int) -> int:
        """min over alpha, j of A[i + alpha*p_tau, j] + B[j, ell] + C[ell, .]."""
        best = None
        for alpha in range(self.tau):
            row = self.padded_row(i + alpha * self.p_tau)
            cterm = int(self.c[ell, row])
            for j in range(self.q):
                v = int(self.a[row, j]) + int(self.b[j, ell]) + cterm
                if best is None or v < best:
                    best = v
        return best


@dataclass
class BatchInstance:
    """A batched bounded-distance instance under the normalized weights."""

    weights: WeightFn           # denominator scale_k
    xs: list                    # r * p_tau strings in (ell, i)-lex order
    y: np.ndarray
    k_num: int                  # threshold numerator over weights.denominator
    params: GadgetParams | None
    labels: list                # (ell, i) per batch entry; None for dummies
    x_alphabet: np.ndarray      # bool mask: symbol occurs on the X side
    y_alphabet: np.ndarray

    @property
    def threshold_den(self) -> int:
        return self.weights.denominator

    def consecutive_hamming(self) -> int:
        h = 0
        for u, v in zip(self.xs, self.xs[1:]):
            h = max(h, int((u != v).sum()))
        return h


def gen_three_matrix_gadget(params: GadgetParams,
                            hamming_budget: int | None = None) -> BatchInstance:
    """Batch of r * p_tau strings whose distances to Y encode triple minima.

    Under the normalized magnitude-[0,2] weight function, the distance of
    X_{ell,i} to Y equals :func:`predicted_distance`(params, ell, i); the
    batch minimum is at most the threshold iff the tripartite graph behind
    (A, B, C) has a triangle of non-positive weight.

    With ``hamming_budget`` set, dummy strings over an extra '#' symbol
    are interleaved so consecutive batch entries differ in at most that
    many positions without changing the decision.
    """
    pt, tau, p, q, r, e = (params.p_tau, params.tau, params.p, params.q,
                           params.r, params.e)
    sd, si, sf, sk = params.scale_d, params.scale_i, params.scale_f, params.scale_k
    side = (tau - 1) * (2 * pt + 2) + pt   # fresh chars on each side of Y core

    # ---- symbol layout ----
    ids = {}
    next_id = 0

    def alloc(key):
        nonlocal next_id
        ids[key] = next_id
        next_id += 1
        return ids[key]

    for alpha in range(tau):
        for i in range(pt):
            alloc(("xr", alpha, i))
        for ell in range(r):
            alloc(("xsel", alpha, ell))
        for i in range(1, pt + 1):
            alloc(("xt", alpha, i))
    for ell in range(r):
        for i in range(pt):
            alloc(("s0", ell, i))
    for alpha in range(1, tau):
        alloc(("dollar", alpha))
    for i in range(pt):
        alloc(("stau", i))
    x_side_end = next_id
    for j in range(2 * pt + q):
        alloc(("y", j))
    for t in range(1, side + 1):
        alloc(("yneg", t))
    for t in range(side):
        alloc(("ypos", t))
    asize = next_id

    # ---- directional gadget weights (numerators over denominator 1) ----
    dir_sub = np.full((asize, asize), 2 * sf, dtype=np.int64)
    np.fill_diagonal(dir_sub, 0)
    for alpha in range(tau):
        block = np.array([[int(params.a[params.padded_row(i + alpha * pt), j])
                           for j in range(q)] for i in range(pt)], dtype=np.int64)
        block = np.vstack([block, np.zeros((1, q), dtype=np.int64)])
        for i in range(pt):
            for j in range(q):
                dir_sub[ids[("xr", alpha, i)], ids[("y", i + j)]] = \
                    sf + int(block[i, j] - block[i + 1, j]) + (q - j) * sd
        for ell in range(r):
            for j in range(q):
                dir_sub[ids[("xsel", alpha, ell)], ids[("y", pt + j)]] = \
                    sf + int(params.b[j, ell])
        for i in range(1, pt + 1):
            for j in range(q):
                dir_sub[ids[("xt", alpha, i)], ids[("y", pt + i + j)]] = \
                    sf + (j + 1) * sd
    # plain X-side characters may substitute to any fresh Y character at F
    fresh_ids = [ids[("yneg", t)] for t in range(1, side + 1)] + \
                [ids[("ypos", t)] for t in range(side)]
    marker_ids = {ids[("s0", ell, i)] for ell in range(r) for i in range(pt)} | \
                 {ids[("stau", i)] for i in range(pt)}
    for x_id in range(x_side_end):
        if x_id in marker_ids:
            continue
        for y_id in fresh_ids:
            dir_sub[x_id, y_id] = sf
    # Marker substitution targets: the alpha-labelled pair selects which
    # block crosses the core of Y.  Deeper targets must be *more*
    # expensive on the I scale, so that a mismatched pair (prefix label
    # beyond suffix label, letting the alignment bypass the core entirely
    # with insertions) costs at least (tau+2)I while every matched pair
    # costs exactly (tau+1)I.
    for ell in range(r):
        for i in range(pt):
            for alpha in range(tau):
                row = params.padded_row(i + alpha * pt)
                target = ids[("yneg", alpha * (2 * pt + 2) + i + 1)]
                dir_sub[ids[("s0", ell, i)], target] = \
                    sf + int(params.c[ell, row]) + (alpha + 1) * si + i * (q + 1) * sd
    for i in range(pt):
        for alpha in range(tau):
            target = ids[("ypos", (tau - alpha - 1) * (2 * pt + 2) + i)]
            dir_sub[ids[("stau", i)], target] = sf + (tau - alpha) * si

    # ---- normalized metric weights over denominator K ----
    x_mask = np.zeros(asize, dtype=bool)
    x_mask[:x_side_end] = True
    y_mask = ~x_mask
    sub = np.zeros((asize, asize), dtype=np.int64)
    sub[np.ix_(x_mask, x_mask)] = sk          # 1 between X-side symbols
    sub[np.ix_(y_mask, y_mask)] = 2 * sk      # 2 between Y-side symbols
    cross = sk + np.minimum(dir_sub, 2 * sf)  # 1 + w(x -> y)/K
    sub[np.ix_(x_mask, y_mask)] = cross[np.ix_(x_mask, y_mask)]
    sub[np.ix_(y_mask, x_mask)] = cross[np.ix_(x_mask, y_mask)].T
    np.fill_diagonal(sub, 0)
    ins = np.where(x_mask, sk, 2 * sk).astype(np.int64)
    dele = ins.copy()
    w = WeightFn(asize, sk, sub, ins, dele)

    # ---- strings ----
    def block_chars(alpha, ell):
        return ([ids[("xr", alpha, i)] for i in range(pt)] +
                [ids[("xsel", alpha, ell)]] +
                [ids[("xt", alpha, i)] for i in range(1, pt + 1)])

    def make_x(ell, i):
        s = [ids[("s0", ell, i)]]
        for alpha in range(tau):
            if alpha:
                s.append(ids[("dollar", alpha)])
            s.extend(block_chars(alpha, ell))
        s.append(ids[("stau", i)])
        return np.array(s, dtype=np.int32)

    y_core = [ids[("y", j)] for j in range(2 * pt + q)]
    y_full = ([ids[("yneg", t)] for t in range(side, 0, -1)] + y_core +
              [ids[("ypos", t)] for t in range(side)])
    y = np.array(y_full, dtype=np.int32)

    xs = []
    labels = []
    for ell in range(r):
        for i in range(pt):
            xs.append(make_x(ell, i))
            labels.append((ell, i))
    assert len(xs[0]) == params.len_x and len(y) == params.len_y

    k_num = ((2 * params.len_y - params.len_x) * sk +
             params.len_x * sf + (tau + 1) * si + pt * (q + 1) * sd)
    batch = BatchInstance(w, xs, y, k_num, params, labels, x_mask, y_mask)
    if hamming_budget is not None:
        batch = _interleave_dummies(batch, hamming_budget)
    return batch


def predicted_distance(params: GadgetParams, ell: int, i: int) -> int:
    """Closed-form wed(X_{ell,i}, Y) numerator over denominator K."""
    if not (0 <= ell < params.r and 0 <= i < params.p_tau):
        raise GadgetError("label out of range")
    return ((2 * params.len_y - params.len_x) * params.scale_k +
            params.len_x * params.scale_f + (params.tau + 1) * params.scale_i +
            params.p_tau * (params.q + 1) * params.scale_d +
            params.triple_min(ell, i))


def _interleave_dummies(batch: BatchInstance, budget: int) -> BatchInstance:
    """Insert '#'-padded dummy strings so consecutive Hamming gaps <= budget."""
    if budget < 3:
        raise GadgetError("hamming budget must be at least 3")
    w = batch.weights
    asize = w.alphabet_size
    hash_id = asize
    sk = w.denominator
    sub = np.full((asize + 1, asize + 1), 2 * sk, dtype=np.int64)
    sub[:asize, :asize] = w.sub
    np.fill_diagonal(sub, 0)
    ins = np.concatenate([w.ins, [2 * sk]])
    dele = np.concatenate([w.dele, [2 * sk]])
    new_w = WeightFn(asize + 1, sk, sub, ins, dele)

    out_xs = [batch.xs[0]]
    out_labels = [batch.labels[0]]
    for prev, nxt, lab in zip(batch.xs, batch.xs[1:], batch.labels[1:]):
        diff = [t for t in range(len(prev)) if prev[t] != nxt[t]]
        if len(diff) > budget:
            interior = [t for t in diff if t not in (0, len(prev) - 1)]
            cur = prev.copy()
            cur[0] = hash_id
            cur[-1] = hash_id
            changed = 0
            for t in interior:
                if changed >= budget - 2:
                    out_xs.append(cur.copy())
                    out_labels.append(None)
                    changed = 0
                cur[t] = nxt[t]
                changed += 1
        out_xs.append(nxt)
        out_labels.append(lab)
    xm = np.concatenate([batch.x_alphabet, [True]])
    ym = np.concatenate([batch.y_alphabet, [False]])
    return BatchInstance(new_w, out_xs, batch.y, batch.k_num, batch.params,
                         out_labels, xm, ym)


# ---------------------------------------------------------------------------
# tripartite graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripartiteGraph:
    """Complete tripartite graph with integer edge weights.

    ``pq[i][j]``, ``qr[j][l]``, ``rp[l][i]`` hold the weights between the
    three parts; every entry must be present (complete graph).
    """

    pq: np.ndarray
    qr: np.ndarray
    rp: np.ndarray

    def sizes(self):
        return self.pq.shape[0], self.pq.shape[1], self.qr.shape[1]


def triangle_to_matrices(graph: TripartiteGraph) -> tuple:
    """(A, B, C) from a complete tripartite graph, the natural way."""
    pq = np.asarray(graph.pq, dtype=np.int64)
    qr = np.asarray(graph.qr, dtype=np.int64)
    rp = np.asarray(graph.rp, dtype=np.int64)
    p, q = pq.shape
    q2, r = qr.shape
    r2, p2 = rp.shape
    if q2 != q or r2 != r or p2 != p:
        raise GadgetError("tripartite parts have inconsistent sizes")
    if any(np.isnan(m).any() for m in ()):  # arrays are ints; completeness is shape
        raise GadgetError("missing edges")
    return pq, qr, rp


def min_triangle_weight(a, b, c) -> int:
    """Brute-force minimum triangle weight of the encoded tripartite graph."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    best = None
    p, q = a.shape
    r = b.shape[1]
    for i in range(p):
        for j in range(q):
            for ell in range(r):
                v = int(a[i, j]) + int(b[j, ell]) + int(c[ell, i])
                if best is None or v < best:
                    best = v
    return best


# ---------------------------------------------------------------------------
# batch combination (single-pair instance)
# ---------------------------------------------------------------------------

@dataclass
class CombinedInstance:
    xhat: np.ndarray
    yhat: np.ndarray
    weights: WeightFn
    k_hat_num: int
    m: int
    h: int
    sep_len: int               # r in the construction
    diamond: int
    bottom: int                # the pad symbol substituted into X-bot strings

    @property
    def threshold_den(self) -> int:
        return self.weights.denominator


class CombineError(ValueError):
    def __init__(self, failures):
        super().__init__("batch violates side conditions: " + "; ".join(failures))
        self.failures = failures


def check_batch_conditions(batch: BatchInstance) -> list:
    """Side conditions the combiner relies on; returns failure descriptions."""
    fails = []
    w = batch.weights
    den = w.denominator
    xs, y = batch.xs, batch.y
    if len({len(s) for s in xs}) != 1:
        fails.append("batch strings have unequal lengths")
    occ_x = np.zeros(w.alphabet_size, dtype=bool)
    for s in xs:
        occ_x[s] = True
    occ_y = np.zeros(w.alphabet_size, dtype=bool)
    occ_y[y] = True
    if (occ_x & occ_y).any():
        fails.append("X and Y alphabets overlap")
    if not w.symmetric:
        fails.append("weights are not symmetric")
    off = ~np.eye(w.alphabet_size, dtype=bool)
    vals = w.sub[off]
    if (vals < den).any() or (vals > 2 * den).any():
        fails.append("off-diagonal weights leave [1, 2]")
    if (w.dele[occ_x] != den).any():
        fails.append("w(a, eps) != 1 for some X-side symbol")
    if (w.ins[occ_y] != 2 * den).any():
        fails.append("w(eps, b) != 2 for some Y-side symbol")
    if (w.ins[occ_x] > 2 * den).any() or (w.dele[occ_y] > 2 * den).any():
        fails.append("indel weights leave [1, 2]")
    x_len, y_len = len(xs[0]), len(y)
    lo = (2 * y_len - x_len) * den
    if not (lo <= batch.k_num < lo + den):
        fails.append("threshold outside [2y - x, 2y - x + 1)")
    return fails


def combine_batch(batch: BatchInstance) -> CombinedInstance:
    """One pair (Xhat, Yhat, khat) equivalent to the batched decision.

    min_i wed(X_i, Y) <= k holds iff wed(Xhat, Yhat) <= khat; separators
    of fresh symbols force any cheap alignment to line up one batch string
    against the single embedded copy context of Y.
    """
    fails = check_batch_conditions(batch)
    if fails:
        raise CombineError(fails)
    w = batch.weights
    den = w.denominator
    xs, y = batch.xs, batch.y
    m = len(xs)
    x_len, y_len = len(xs[0]), len(y)
    h = batch.consecutive_hamming()
    sep = (m - 1) * (h + 4) + x_len + 2 * y_len + 1

    base = w.alphabet_size
    u_ids = list(range(base, base + sep))
    v_ids = list(range(base + sep, base + 2 * sep))
    bot_id = base + 2 * sep
    dia_id = base + 2 * sep + 1
    asize = base + 2 * sep + 2

    sub = np.full((asize, asize), den, dtype=np.int64)
    sub[:base, :base] = w.sub
    np.fill_diagonal(sub, 0)
    ins = np.concatenate([w.ins, np.full(2 * sep + 2, den, dtype=np.int64)])
    dele = np.concatenate([w.dele, np.full(2 * sep + 2, den, dtype=np.int64)])
    what = WeightFn(asize, den, sub, ins, dele)

    def bot_version(s, other):
        out = s.astype(np.int32).copy()
        if other is not None:
            positions = [t for t in range(len(s)) if s[t] != other[t]]
        else:
            positions = []
        for t in range(len(s)):
            if len(positions) >= h:
                break
            if t not in positions:
                positions.append(t)
        for t in sorted(positions[:h]):
            out[t] = bot_id
        return out

    bots = [bot_version(xs[0], None)]
    for i in range(1, m):
        bots.append(bot_version(xs[i - 1], xs[i]))
    bots.append(bot_version(xs[m - 1], None))

    u = np.array(u_ids, dtype=np.int32)
    v = np.array(v_ids, dtype=np.int32)
    dia = np.array([dia_id], dtype=np.int32)

    parts = [dia, xs[0].astype(np.int32), dia]
    for i in range(1, m):
        parts += [u, y.astype(np.int32), v, dia, xs[i].astype(np.int32), dia]
    xhat = np.concatenate(parts)

    parts = [bots[0]]
    for i in range(1, m + 1):
        parts += [u, dia, y.astype(np.int32), dia, v, bots[i]]
    yhat = np.concatenate(parts)

    k_hat_num = ((m - 1) * (h + 4) + 2 * sep + 2 * x_len) * den + batch.k_num
    return CombinedInstance(xhat, yhat, what, k_hat_num, m, h, sep, dia_id, bot_id)
