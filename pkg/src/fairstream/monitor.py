"""Block-level fairness verdicts over a forward sketch."""

from __future__ import annotations

from typing import Sequence

from .core import FAIR, FairnessConstraint, Verdict, Violation, WindowSpec
from .sketch import ForwardSketch


def monitor_bfair(sketch: ForwardSketch, constraint: FairnessConstraint, spec: WindowSpec) -> Verdict:
    """Check blocks 1..k in order and stop at the first out-of-range count.

    Only the sketch entry at each block end is read, so a fair window costs
    O(k*l) and a violation in block 1 costs O(l).
    """
    n = spec.window_size
    if sketch.window_len != n or spec.k * spec.block_size != n:
        raise ValueError(f"sketch width {sketch.window_len} does not match window spec {n}")
    s = spec.block_size
    lo, hi = constraint.ranges(s)
    m = len(lo) - 1
    lo_last, hi_last = lo[m], hi[m]
    entries = sketch.entries
    head = sketch.head
    prev = sketch.base
    idx = head + s - 1
    for b in range(1, spec.k + 1):
        if idx >= n:
            idx -= n
        cur = entries[idx]
        stored = 0
        for j in range(m):
            c = cur[j] - prev[j]
            if c < lo[j] or c > hi[j]:
                return _unfair(constraint, b, j, c, lo, hi)
            stored += c
        c = s - stored
        if c < lo_last or c > hi_last:
            return _unfair(constraint, b, m, c, lo, hi)
        prev = cur
        idx += s
    return FAIR


def _unfair(constraint, block, j, observed, lo, hi) -> Verdict:
    return Verdict(False, Violation(block, constraint.schema.values[j], observed, lo[j], hi[j]))


def check_block_counts(counts: Sequence[int], constraint: FairnessConstraint, spec: WindowSpec,
                       block: int) -> Violation | None:
    lo, hi = constraint.ranges(spec.block_size)
    for j, c in enumerate(counts):
        if c < lo[j] or c > hi[j]:
            return Violation(block, constraint.schema.values[j], c, lo[j], hi[j])
    return None


def feasible_within_window(totals: Sequence[int], constraint: FairnessConstraint, spec: WindowSpec) -> bool:
    """True when every value has at least k times its per-block minimum."""
    lo, _ = constraint.ranges(spec.block_size)
    k = spec.k
    return all(t >= k * a for t, a in zip(totals, lo))
