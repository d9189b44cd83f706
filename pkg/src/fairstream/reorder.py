"""Reordering a buffered stream to maximise the number of fair sliding blocks.

For each allowed per-block count vector (a "combo") the items are laid out as
repeated copies of one block pattern (isomorphic blocks), followed by the
longest prefix of that pattern the leftovers can still supply.  Every length-s
window inside such a run is a rotation of the pattern and therefore fair.
When the items left after the isomorphic blocks can fill at least one block of
a different combo, a second run of that combo is appended, with both patterns
sharing as long a common prefix as possible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .core import FairnessConstraint, Item, ReorderResult, WindowSpec, valid_combinations

Combo = tuple[int, ...]
INF = float("inf")


@dataclass
class PatternPlan:
    patterns: list[tuple[int, ...]]
    ibc: int
    ibc_r: int | None
    ep: tuple[int, ...]
    epl: int
    leftovers: tuple[int, ...]
    # value-index sequence of the whole output
    layout: list[int]


def encode(items: Sequence[Item], constraint: FairnessConstraint) -> list[int]:
    index = constraint.schema.index
    return [index(it.value) for it in items]


def fair_windows(codes: Sequence[int], lo: Sequence[int], hi: Sequence[int], s: int) -> int:
    """Number of start positions whose s-item window has every count in range."""
    n = len(codes)
    if n < s:
        return 0
    counts = [0] * len(lo)
    for c in codes[:s]:
        counts[c] += 1
    bad = sum(1 for c, a, b in zip(counts, lo, hi) if c < a or c > b)
    total = 1 if bad == 0 else 0
    for i in range(s, n):
        out, inc = codes[i - s], codes[i]
        if out != inc:
            for j, d in ((out, -1), (inc, 1)):
                was = lo[j] <= counts[j] <= hi[j]
                counts[j] += d
                now = lo[j] <= counts[j] <= hi[j]
                if was != now:
                    bad += -1 if now else 1
        if bad == 0:
            total += 1
    return total


def count_fair_blocks(stream: Sequence, constraint: FairnessConstraint, spec: WindowSpec) -> int:
    """Fair blocks over all start positions 1..n-s+1 of ``stream`` (Items or labels)."""
    s = spec.block_size
    if len(stream) < s:
        raise ValueError(f"stream of {len(stream)} items is shorter than block size {s}")
    index = constraint.schema.index
    codes = [index(x.value if isinstance(x, Item) else x) for x in stream]
    lo, hi = constraint.ranges(s)
    return fair_windows(codes, lo, hi, s)


def ibc(totals: Sequence[int], combo: Sequence[int]) -> int:
    """Number of identical blocks of ``combo`` the totals can fill."""
    best = INF
    for t, v in zip(totals, combo):
        if v > 0:
            best = min(best, t // v)
    return 0 if best == INF else int(best)


def extended_prefix(totals: Sequence[int], combo: Sequence[int], n_blocks: int) -> tuple[tuple[int, ...], int]:
    ep = tuple(min(v, t - n_blocks * v) for t, v in zip(totals, combo))
    return ep, sum(ep)


def _tally(codes: Sequence[int], ell: int) -> list[int]:
    counts = [0] * ell
    for c in codes:
        counts[c] += 1
    return counts


def _expand(counts: Sequence[int]) -> list[int]:
    out = []
    for j, c in enumerate(counts):
        out.extend([j] * c)
    return out


def _single_layout(totals, combo, n_blocks):
    ep, epl = extended_prefix(totals, combo, n_blocks)
    pattern = tuple(_expand(ep) + _expand([v - e for v, e in zip(combo, ep)]))
    used = [n_blocks * v + e for v, e in zip(combo, ep)]
    leftovers = tuple(t - u for t, u in zip(totals, used))
    layout = list(pattern) * n_blocks + list(pattern[:epl]) + _expand(leftovers)
    return PatternPlan([pattern], n_blocks, None, ep, epl, leftovers, layout)


def _aligned_patterns(shared: Sequence[int], first: Sequence[int], second: Sequence[int]):
    """Lay out two block patterns as shared prefix, then common values, then the rest."""
    a_first = [min(x, y) for x, y in zip(shared, first)]
    rest_f = [v - a for v, a in zip(first, a_first)]
    rest_s = [v - a for v, a in zip(second, shared)]
    common = [min(x, y) for x, y in zip(rest_f, rest_s)]
    p = _expand(a_first) + _expand(common) + _expand([x - c for x, c in zip(rest_f, common)])
    q = _expand(shared) + _expand(common) + _expand([x - c for x, c in zip(rest_s, common)])
    return tuple(p), tuple(q)


def _multi_layout(totals, combo, n_blocks, other):
    remainder = [t - n_blocks * v for t, v in zip(totals, combo)]
    n_r = ibc(remainder, other)
    if n_r < 1:
        return None
    ep_r, epl_r = extended_prefix(remainder, other, n_r)
    p, q = _aligned_patterns(ep_r, combo, other)
    leftovers = tuple(r - n_r * u - e for r, u, e in zip(remainder, other, ep_r))
    layout = list(p) * n_blocks + list(q) * n_r + list(q[:epl_r]) + _expand(leftovers)
    return PatternPlan([p, q], n_blocks, n_r, ep_r, epl_r, leftovers, layout)


def _balanced_split(totals, combo, other, n_max):
    """Primary block count in 1..n_max maximising primary + secondary complete blocks."""
    best_j, best_total = n_max, -1
    for j in range(n_max, 0, -1):
        total = j + ibc([t - j * v for t, v in zip(totals, combo)], other)
        if total > best_total:
            best_j, best_total = j, total
    return best_j


def _materialize(items: Sequence[Item], codes: Sequence[int], layout: Sequence[int], ell: int) -> list[Item]:
    queues = [deque() for _ in range(ell)]
    for it, c in zip(items, codes):
        queues[c].append(it)
    return [queues[c].popleft() for c in layout]


def _plan_for(codes, combo, all_combos, lo, hi, s, ell):
    """Best layout for one primary combo; None when not a single block fits."""
    totals = _tally(codes, ell)
    n = len(codes)
    n_blocks = ibc(totals, combo)
    if n_blocks < 1:
        return None, None
    plan = _single_layout(totals, combo, n_blocks)
    best_count = fair_windows(plan.layout, lo, hi, s)
    best_other = None
    if n_blocks * s == n:
        return plan, (best_count, None)
    best_multi = None
    for other in all_combos:
        if other == combo:
            continue
        splits = {n_blocks, _balanced_split(totals, combo, other, n_blocks)}
        for j in sorted(splits, reverse=True):
            cand = _multi_layout(totals, combo, j, other)
            if cand is None:
                continue
            cnt = fair_windows(cand.layout, lo, hi, s)
            if best_multi is None or cnt > best_multi[0]:
                best_multi = (cnt, cand, other)
    # an eligible secondary wins unless the single layout is strictly better
    if best_multi is not None and best_multi[0] >= best_count:
        best_count, plan, best_other = best_multi
    return plan, (best_count, best_other)


def max_reorder(items: Sequence[Item], combo: Sequence[int], all_combos: Sequence[Sequence[int]],
                constraint: FairnessConstraint, spec: WindowSpec) -> ReorderResult:
    ell = constraint.schema.cardinality
    combo = tuple(combo)
    if len(combo) != ell:
        raise ValueError(f"combination {combo} does not match schema of {ell} values")
    if not items:
        raise ValueError("nothing to reorder")
    s = spec.block_size
    lo, hi = constraint.ranges(s)
    codes = encode(items, constraint)
    plan, info = _plan_for(codes, combo, [tuple(c) for c in all_combos], lo, hi, s, ell)
    if plan is None:
        count = fair_windows(codes, lo, hi, s)
        return ReorderResult(list(items), count, combo, None, changed=False)
    stream = _materialize(items, codes, plan.layout, ell)
    return ReorderResult(stream, info[0], combo, info[1], changed=True, plan=plan)


def bfair_reorder(items: Sequence[Item], constraint: FairnessConstraint, spec: WindowSpec) -> ReorderResult:
    """Try every allowed combo as the block pattern and keep the layout with the most fair blocks.

    The input order is returned untouched when no layout beats it.
    """
    s = spec.block_size
    if len(items) < s:
        raise ValueError(f"need at least {s} items, got {len(items)}")
    ell = constraint.schema.cardinality
    lo, hi = constraint.ranges(s)
    combos = valid_combinations(constraint, spec)
    codes = encode(items, constraint)
    baseline = fair_windows(codes, lo, hi, s)
    best = None
    for combo in combos:
        plan, info = _plan_for(codes, combo, combos, lo, hi, s, ell)
        if plan is not None and (best is None or info[0] > best[2][0]):
            best = (combo, plan, info)
    if best is None or best[2][0] <= baseline:
        return ReorderResult(list(items), baseline, best[0] if best else None, None, changed=False,
                             plan=best[1] if best else None)
    combo, plan, (count, other) = best
    stream = _materialize(items, codes, plan.layout, ell)
    return ReorderResult(stream, count, combo, other, changed=True, plan=plan)
