"""Shared generators for the differential test suites."""
from __future__ import annotations

import numpy as np
import pytest

from wedist.core import Alignment, make_weight_fn


def sym(text: str) -> np.ndarray:
    """Letters to symbol ids (a=0)."""
    return np.array([ord(c) - 97 for c in text], dtype=np.int32)


def random_weights(rng, sigma, max_den=8, hi_mult=4):
    """Random normalized weight function with a shared denominator."""
    den = int(rng.integers(1, max_den + 1))
    sub = rng.integers(den, hi_mult * den, (sigma, sigma))
    np.fill_diagonal(sub, 0)
    return make_weight_fn(
        sigma, den, sub,
        rng.integers(den, hi_mult * den, sigma),
        rng.integers(den, hi_mult * den, sigma))


def metric_weights(rng, sigma, max_w=4):
    """Symmetric integer weights satisfying the triangle inequality."""
    # embed symbols + epsilon on a line; |position difference| is a metric
    pos = np.sort(rng.integers(0, max_w + 1, sigma + 1))
    full = np.abs(pos[:, None] - pos[None, :]).astype(np.int64) + \
        (1 - np.eye(sigma + 1, dtype=np.int64))
    sub = full[:sigma, :sigma]
    ins = full[sigma, :sigma]
    return make_weight_fn(sigma, 1, sub, ins, ins.copy())


def planted_pair(rng, n, sigma, edits):
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


def periodic_string(rng, n, sigma, period_hi=6, mutations=0):
    p = int(rng.integers(1, period_hi))
    xs = np.tile(rng.integers(0, sigma, p), -(-n // p))[:n].astype(np.int32)
    for _ in range(mutations):
        if len(xs):
            xs[rng.integers(0, len(xs))] = rng.integers(0, sigma)
    return xs


def mixed_string(rng, n, sigma):
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return rng.integers(0, sigma, n).astype(np.int32)
    if kind == 1:
        return periodic_string(rng, n, sigma, mutations=int(rng.integers(0, 4)))
    half = n // 2
    return np.concatenate([periodic_string(rng, half, sigma),
                           periodic_string(rng, n - half, sigma)]).astype(np.int32)


def random_alignment(rng, n, m) -> Alignment:
    """Uniform-ish monotone staircase from (0,0) to (n,m)."""
    pts = [(0, 0)]
    x = y = 0
    while (x, y) != (n, m):
        moves = []
        if x < n and y < m:
            moves.append((1, 1))
        if x < n:
            moves.append((1, 0))
        if y < m:
            moves.append((0, 1))
        dx, dy = moves[rng.integers(0, len(moves))]
        x, y = x + dx, y + dy
        pts.append((x, y))
    return Alignment.from_points(pts, (0, n, 0, m))
