"""File formats shared by the CLI: weight tables, symbol strings.

Weight file (JSON): {"alphabet_size": A, "denominator": u,
"sub": [[int;A];A], "ins": [int;A], "del": [int;A]}; -1 encodes infinity.
String file: whitespace-separated decimal symbol ids, or raw bytes mapped
to ids 0..255.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import WeightFn, weight_fn_from_json


class InputError(ValueError):
    pass


def read_weights(path) -> WeightFn:
    try:
        return weight_fn_from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read weight file {path}: {exc}") from exc


def write_weights(path, w: WeightFn) -> None:
    Path(path).write_text(w.to_json() + "\n")


def read_string(path, raw: bool = False) -> np.ndarray:
    try:
        if raw:
            data = Path(path).read_bytes()
            return np.frombuffer(data, dtype=np.uint8).astype(np.int32)
        toks = Path(path).read_text().split()
        return np.array([int(t) for t in toks], dtype=np.int32)
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read string file {path}: {exc}") from exc


def write_string(path, xs) -> None:
    Path(path).write_text(" ".join(str(int(v)) for v in xs) + "\n")
