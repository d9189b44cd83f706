"""Synthetic streams for tests, benchmarks and the ``gen`` subcommand."""

from __future__ import annotations

import random
from typing import Sequence

from .core import Item


def skewed_stream(values: Sequence[str], n: int, weights: Sequence[float] | None = None,
                  burstiness: float = 0.0, seed: int | None = 0, start: int = 1) -> list[Item]:
    """``n`` items drawn by weight; with probability ``burstiness`` an item
    repeats the previous value instead of a fresh draw."""
    if not 0.0 <= burstiness < 1.0:
        raise ValueError("burstiness must be in [0, 1)")
    rng = random.Random(seed)
    weights = list(weights) if weights is not None else [1.0] * len(values)
    if len(weights) != len(values):
        raise ValueError("weights and values differ in length")
    out: list[Item] = []
    prev = None
    for i in range(n):
        if prev is not None and burstiness and rng.random() < burstiness:
            v = prev
        else:
            v = rng.choices(values, weights)[0]
        out.append(Item(start + i, v))
        prev = v
    return out


def periodic_stream(values: Sequence[str], combo: Sequence[int], n: int, seed: int | None = 0,
                    start: int = 1) -> list[Item]:
    """Repeat one shuffled block of ``combo`` counts; every s-window of the result has exactly those counts."""
    rng = random.Random(seed)
    block = [v for v, c in zip(values, combo) for _ in range(c)]
    rng.shuffle(block)
    return [Item(start + i, block[i % len(block)]) for i in range(n)]


def from_values(values: Sequence[str], start: int = 1) -> list[Item]:
    return [Item(start + i, v) for i, v in enumerate(values)]
