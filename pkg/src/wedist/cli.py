"""Command line surface.

Subcommands: dist (distance with algorithm selection), selfed,
decompose, gen-hard, verify, bench.  Exit codes: 0 = finite result,
1 = threshold exceeded, 2 = usage/input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import fileio
from .core import INF, alignment_to_cigar, as_symbols, normalize_check, unit_weights
from .dac import RunStats, SolverConfig, wed_auto, weighted_ed
from .decompose import decompose_pillar, decompose_std
from .fileio import InputError
from .hardgen import GadgetError, GadgetParams, combine_batch, gen_three_matrix_gadget
from .oracle import wed_banded, wed_quadratic
from .pillar import build_index
from .selfed import selfed_bounded
from .verify import run_verify

EXIT_OK = 0
EXIT_EXCEEDED = 1
EXIT_USAGE = 2


@dataclass
class RunReport:
    algorithm: str
    cost_num: int | None        # None encodes INF
    cost_den: int
    cigar: str | None
    seconds: float
    pillar_ops: int
    depth: int

    def emit(self, out=sys.stdout):
        d = asdict(self)
        d["cost"] = "INF" if self.cost_num is None else f"{self.cost_num}/{self.cost_den}"
        out.write(json.dumps(d) + "\n")


def _planted_instance(rng, n, sigma, edits):
    xs = rng.integers(0, sigma, n).astype(np.int32)
    ys = xs.copy()
    for _ in range(edits):
        op = int(rng.integers(0, 3))
        pos = int(rng.integers(0, max(1, len(ys))))
        if op == 0 and len(ys):
            ys[pos] = rng.integers(0, sigma)
        elif op == 1:
            ys = np.insert(ys, pos, rng.integers(0, sigma))
        elif len(ys):
            ys = np.delete(ys, pos)
    return xs, ys.astype(np.int32)


def cmd_dist(args) -> int:
    try:
        w = fileio.read_weights(args.weights)
        xs = fileio.read_string(args.x, raw=args.raw)
        ys = fileio.read_string(args.y, raw=args.raw)
        if len(xs) and int(xs.max()) >= w.alphabet_size:
            raise InputError("symbol id in X exceeds alphabet")
        if len(ys) and int(ys.max()) >= w.alphabet_size:
            raise InputError("symbol id in Y exceeds alphabet")
        if args.algo == "band" and args.k is None:
            raise InputError("--algo band requires --k")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    stats = RunStats()
    ops = 0
    al = None
    t0 = time.perf_counter()
    if args.algo == "quad":
        res = wed_quadratic(xs, ys, w, want_alignment=args.alignment)
        cost, al = res.cost, res.alignment
    elif args.algo == "band":
        cost = wed_banded(xs, ys, w, args.k)
    elif args.algo in ("main", "pillar"):
        engine = "standard" if args.algo == "main" else "pillar"
        cfg = SolverConfig(engine=engine)
        ix = build_index([xs, ys], mode="sa") if engine == "pillar" else None
        if args.k is None:
            cost, al = wed_auto(xs, ys, w, cfg, want_alignment=args.alignment,
                                stats=stats)
        else:
            cost, al = weighted_ed(xs, ys, args.k, w, cfg,
                                   want_alignment=args.alignment,
                                   stats=stats, ix=ix)
        if ix is not None:
            ops = ix.stats()["total"]
    else:
        print(f"error: unknown algorithm {args.algo}", file=sys.stderr)
        return EXIT_USAGE
    dt = time.perf_counter() - t0

    cigar = None
    if args.alignment and al is not None:
        cigar = alignment_to_cigar(xs, ys, al)
    rep = RunReport(args.algo, None if cost is INF else int(cost),
                    w.denominator, cigar, dt, ops, stats.depth)
    rep.emit()
    return EXIT_OK if cost is not INF else EXIT_EXCEEDED


def cmd_selfed(args) -> int:
    try:
        xs = fileio.read_string(args.x, raw=args.raw)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    k = args.k if args.k is not None else 2 * len(xs)
    t0 = time.perf_counter()
    val, al = selfed_bounded(xs, k)
    dt = time.perf_counter() - t0
    cigar = alignment_to_cigar(xs, xs, al) if (args.alignment and al) else None
    rep = RunReport("selfed", val, 1, cigar, dt, 0, 0)
    rep.emit()
    return EXIT_OK if val is not None else EXIT_EXCEEDED


def cmd_decompose(args) -> int:
    try:
        xs = fileio.read_string(args.x, raw=args.raw)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    k = args.k
    if k is None:
        val, _ = selfed_bounded(xs, 2 * len(xs))
        k = max(1, val if val is not None else 2 * len(xs))
    if args.variant == "pillar":
        dec = decompose_pillar(xs, k)
    else:
        ell = args.ell if args.ell is not None else max(1, int(np.sqrt(max(1, len(xs)))))
        dec = decompose_std(xs, k, ell)
    out = dec.to_json_dict()
    out["k"] = k
    print(json.dumps(out))
    return EXIT_OK


def cmd_gen_hard(args) -> int:
    rng = np.random.default_rng(args.seed)
    e = args.e
    params = GadgetParams(
        args.p, args.q, args.r, args.tau, e,
        rng.integers(-e, e + 1, (args.p, args.q)),
        rng.integers(-e, e + 1, (args.q, args.r)),
        rng.integers(-e, e + 1, (args.r, args.p)))
    batch = gen_three_matrix_gadget(params, hamming_budget=args.hamming_budget)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    meta = {
        "p": args.p, "q": args.q, "r": args.r, "tau": args.tau, "E": e,
        "seed": args.seed, "denominator": batch.weights.denominator,
    }
    if args.combined:
        comb = combine_batch(batch)
        fileio.write_weights(out / "weights.json", comb.weights)
        fileio.write_string(out / "X.txt", comb.xhat)
        fileio.write_string(out / "Y.txt", comb.yhat)
        meta["k_num"] = comb.k_hat_num
        meta["k_den"] = comb.threshold_den
        meta["strings"] = {"X": "X.txt", "Y": "Y.txt"}
    else:
        fileio.write_weights(out / "weights.json", batch.weights)
        fileio.write_string(out / "Y.txt", batch.y)
        bdir = out / "batch"
        bdir.mkdir(exist_ok=True)
        for idx, xs in enumerate(batch.xs):
            fileio.write_string(bdir / f"X{idx:04d}.txt", xs)
        meta["k_num"] = batch.k_num
        meta["k_den"] = batch.threshold_den
        meta["batch_size"] = len(batch.xs)
    (out / "instance.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(json.dumps(meta))
    return EXIT_OK


def cmd_verify(args) -> int:
    ok = run_verify(args.cases, args.max_n, args.seed, args.suite)
    return EXIT_OK if ok else EXIT_EXCEEDED


def cmd_bench(args) -> int:
    print("algo,n,k,cost_num,cost_den,seconds,pillar_ops,depth")
    sigma = 8
    for n in args.n:
        for k in args.k:
            edits = args.edits if args.edits is not None else max(1, k // 2)
            rng = np.random.default_rng((args.seed, n, k))
            xs, ys = _planted_instance(rng, n, sigma, min(edits, k))
            w = unit_weights(sigma)
            for algo in args.algo:
                for _rep in range(args.reps):
                    stats = RunStats()
                    ops = 0
                    t0 = time.perf_counter()
                    if algo == "band":
                        cost = wed_banded(xs, ys, w, k)
                    elif algo == "quad":
                        cost = wed_quadratic(xs, ys, w, want_alignment=False).cost
                    elif algo == "main":
                        cost, _ = weighted_ed(xs, ys, k, w,
                                              SolverConfig(engine="standard"),
                                              want_alignment=False, stats=stats)
                    elif algo == "pillar":
                        ix = build_index([xs, ys], mode="sa")
                        cost, _ = weighted_ed(xs, ys, k, w,
                                              SolverConfig(engine="pillar"),
                                              want_alignment=False, stats=stats,
                                              ix=ix)
                        ops = ix.stats()["total"]
                    else:
                        print(f"error: unknown algorithm {algo}", file=sys.stderr)
                        return EXIT_USAGE
                    dt = time.perf_counter() - t0
                    num = "" if cost is INF else int(cost)
                    print(f"{algo},{n},{k},{num},{w.denominator},{dt:.6f},{ops},{stats.depth}")
    return EXIT_OK


def _int_list(text):
    return [int(t) for t in text.split(",") if t]


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wedist",
                                 description="bounded weighted edit distance toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("dist", help="distance between two string files")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--algo", default="main", choices=["quad", "band", "main", "pillar"])
    p.add_argument("--alignment", action="store_true")
    p.add_argument("--raw", action="store_true", help="read strings as raw bytes")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("selfed", help="bounded self-edit distance of a string")
    p.add_argument("--x", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--alignment", action="store_true")
    p.add_argument("--raw", action="store_true")
    p.set_defaults(func=cmd_selfed)

    p = sub.add_parser("decompose", help="phrase decomposition dump (JSON)")
    p.add_argument("--x", required=True)
    p.add_argument("--k", type=int, help="self-edit budget (default: selfed(X))")
    p.add_argument("--ell", type=int, help="phrase length parameter (std variant)")
    p.add_argument("--variant", default="pillar", choices=["pillar", "std"])
    p.add_argument("--raw", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("gen-hard", help="generate a hard-instance corpus")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--tau", type=int, default=1)
    p.add_argument("--e", type=int, default=2, help="matrix entry bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="hard_instance")
    p.add_argument("--combined", action="store_true",
                   help="emit the single combined (X, Y) instance")
    p.add_argument("--hamming-budget", type=int, default=None,
                   help="interleave dummy strings to cap consecutive Hamming distance")
    p.set_defaults(func=cmd_gen_hard)

    p = sub.add_parser("verify", help="differential verification suites")
    p.add_argument("--cases", type=int, default=100)
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", default="all", choices=["core", "hardgen", "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark CSV on planted-edit instances")
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--k", type=_int_list, required=True)
    p.add_argument("--algo", type=lambda s: s.split(","), required=True)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--edits", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GadgetError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
