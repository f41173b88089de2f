"""Differential verification suites used by the CLI `verify` subcommand.

Each suite runs seeded random instances through independent computations
and reports the first mismatch with a minimized reproduction dump.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .band_solver import solve_pillar, solve_standard
from .core import INF, alignment_cost, make_weight_fn, unit_weights
from .dac import weighted_ed, SolverConfig
from .hardgen import (GadgetParams, combine_batch, gen_three_matrix_gadget,
                      min_triangle_weight, predicted_distance)
from .monge import is_monge, monge_minplus, smawk_row_minima
from .oracle import four_way_brute, selfed_brute, wed_banded, wed_quadratic
from .selfed import selfed_bounded


@dataclass
class Mismatch(Exception):
    check: str
    detail: dict

    def __str__(self):
        return f"{self.check}: {json.dumps(self.detail, default=str)}"


def _rand_weights(rng, sigma, max_den=8):
    den = int(rng.integers(1, max_den + 1))
    sub = rng.integers(den, 4 * den, (sigma, sigma))
    np.fill_diagonal(sub, 0)
    return make_weight_fn(sigma, den, sub,
                          rng.integers(den, 4 * den, sigma),
                          rng.integers(den, 4 * den, sigma))


def _rand_pair(rng, max_n, sigma):
    kind = int(rng.integers(0, 3))
    if kind == 0:
        n = int(rng.integers(0, max_n + 1))
        m = int(rng.integers(0, max_n + 1))
        return (rng.integers(0, sigma, n).astype(np.int32),
                rng.integers(0, sigma, m).astype(np.int32))
    n = int(rng.integers(1, max_n + 1))
    if kind == 1:
        xs = rng.integers(0, sigma, n).astype(np.int32)
    else:
        p = int(rng.integers(1, 6))
        xs = np.tile(rng.integers(0, sigma, p), -(-n // p))[:n].astype(np.int32)
    ys = xs.copy()
    for _ in range(int(rng.integers(0, 8))):
        op = int(rng.integers(0, 3))
        pos = int(rng.integers(0, max(1, len(ys))))
        if op == 0 and len(ys):
            ys[pos] = rng.integers(0, sigma)
        elif op == 1:
            ys = np.insert(ys, pos, rng.integers(0, sigma))
        elif len(ys):
            ys = np.delete(ys, pos)
    return xs, ys.astype(np.int32)


def _check_core_case(rng, max_n):
    sigma = int(rng.integers(2, 7))
    xs, ys = _rand_pair(rng, max_n, sigma)
    w = _rand_weights(rng, sigma)
    k = int(rng.integers(0, max(len(xs), len(ys), 1) + 1))
    ref = wed_banded(xs, ys, w, k)
    got, al = weighted_ed(xs, ys, k, w)
    if got != ref:
        raise Mismatch("weighted_ed-vs-banded",
                       {"x": xs.tolist(), "y": ys.tolist(), "k": k,
                        "weights": w.to_json_dict(), "got": got, "ref": ref})
    if got is not INF and alignment_cost(xs, ys, al, w) != got:
        raise Mismatch("witness-cost", {"x": xs.tolist(), "y": ys.tolist(), "k": k})
    # four-way band solver vs brute, when selfed precondition is satisfiable
    n = len(xs)
    sc, _ = selfed_bounded(xs, 2 * n + 2, want_alignment=False)
    kk = max(1, sc)
    d = int(rng.integers(0, min(kk, 16) + 1))
    ref4 = tuple(four_way_brute(xs, ys, w, d))
    if abs(len(xs) - len(ys)) > 2 * d:
        ref4 = (INF, INF, INF, INF)
    for mode in ("fused", "boxes"):
        got4 = solve_standard(xs, ys, w, d, kk, want_alignments=False, mode=mode).values()
        if got4 != ref4:
            raise Mismatch(f"four-way-standard-{mode}",
                           {"x": xs.tolist(), "y": ys.tolist(), "d": d, "k": kk,
                            "weights": w.to_json_dict(), "got": got4, "ref": ref4})
    got4 = solve_pillar(xs, ys, w, d, kk, want_alignments=False).values()
    if got4 != ref4:
        raise Mismatch("four-way-pillar",
                       {"x": xs.tolist(), "y": ys.tolist(), "d": d, "k": kk,
                        "weights": w.to_json_dict(), "got": got4, "ref": ref4})
    # selfed agreement
    if n <= 64:
        sb = selfed_brute(xs)
        got_s, _ = selfed_bounded(xs, 2 * n + 2)
        if got_s != sb:
            raise Mismatch("selfed", {"x": xs.tolist(), "got": got_s, "ref": sb})
    # SMAWK vs naive row minima on a random Monge matrix
    p, qq = int(rng.integers(1, 24)), int(rng.integers(1, 24))
    rows = np.sort(rng.integers(0, 60, p))
    cols = np.sort(rng.integers(0, 60, qq))
    mat = np.abs(rows[:, None] - cols[None, :]).astype(np.int64)
    arg = smawk_row_minima(mat)
    naive = [int(np.argmin(mat[i])) for i in range(p)]
    if arg != naive:
        raise Mismatch("smawk-argmin", {"matrix": mat.tolist(), "got": arg, "ref": naive})
    if not is_monge(monge_minplus(mat, mat.T.copy())):
        raise Mismatch("minplus-monge", {"matrix": mat.tolist()})


def _check_hardgen_case(rng, _max_n):
    p, q = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    r = int(rng.integers(1, 3))
    tau = int(rng.integers(1, p + 1))
    e = int(rng.integers(0, 3))
    params = GadgetParams(p, q, r, tau, e,
                          rng.integers(-e, e + 1, (p, q)),
                          rng.integers(-e, e + 1, (q, r)),
                          rng.integers(-e, e + 1, (r, p)))
    batch = gen_three_matrix_gadget(params)
    best = None
    for (ell, i), x in zip(batch.labels, batch.xs):
        ref = wed_quadratic(x, batch.y, batch.weights, want_alignment=False).cost
        pred = predicted_distance(params, ell, i)
        if ref != pred:
            raise Mismatch("gadget-closed-form",
                           {"p": p, "q": q, "r": r, "tau": tau, "e": e,
                            "a": params.a.tolist(), "b": params.b.tolist(),
                            "c": params.c.tolist(), "ell": ell, "i": i,
                            "got": ref, "ref": pred})
        best = ref if best is None else min(best, ref)
    tri = min_triangle_weight(params.a, params.b, params.c)
    if (best <= batch.k_num) != (tri <= 0):
        raise Mismatch("gadget-decision", {"best": best, "k": batch.k_num, "tri": tri})
    if p <= 2 and q <= 2:
        comb = combine_batch(batch)
        lhs = best <= batch.k_num
        big = wed_quadratic(comb.xhat, comb.yhat, comb.weights, want_alignment=False).cost
        if lhs != (big <= comb.k_hat_num):
            raise Mismatch("combine-equivalence",
                           {"p": p, "q": q, "r": r, "tau": tau, "e": e,
                            "a": params.a.tolist(), "b": params.b.tolist(),
                            "c": params.c.tolist()})


_SUITES = {"core": _check_core_case, "hardgen": _check_hardgen_case}


def run_verify(cases: int, max_n: int, seed: int, suite: str = "all",
               log=print) -> bool:
    """Run the differential suites; on a mismatch, shrink and report."""
    names = list(_SUITES) if suite == "all" else [suite]
    for name in names:
        check = _SUITES[name]
        for case in range(cases):
            rng = np.random.default_rng((seed, case))
            try:
                check(rng, max_n)
            except Mismatch as mm:
                small = _shrink(check, seed, case, max_n)
                log(f"FAIL suite={name} case={case}: {mm.check}")
                log(f"repro: seed={seed} case={case} max_n={small}")
                log(json.dumps(mm.detail, default=str))
                return False
        log(f"suite {name}: {cases} cases OK")
    return True


def _shrink(check, seed, case, max_n) -> int:
    """Smallest max_n (halving) at which the same seeded case still fails."""
    best = max_n
    n = max_n
    while n > 1:
        n //= 2
        try:
            check(np.random.default_rng((seed, case)), n)
            break
        except Mismatch:
            best = n
    return best
