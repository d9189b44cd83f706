"""Ground-truth checkers and baselines: direct recounting, exhaustive reordering, backward sketch."""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

from .core import AttributeSchema, FAIR, FairnessConstraint, Item, Verdict, Violation, WindowSpec

BRUTE_FORCE_LIMIT = 12


def naive_block_counts(window: Sequence[Item], schema: AttributeSchema, block: int, s: int) -> list[int]:
    counts = [0] * schema.cardinality
    for it in window[(block - 1) * s: block * s]:
        counts[schema.index(it.value)] += 1
    return counts


def naive_prefix_counts(window: Sequence[Item], schema: AttributeSchema, i: int) -> list[int]:
    counts = [0] * schema.cardinality
    for it in window[:i]:
        counts[schema.index(it.value)] += 1
    return counts


def naive_monitor(window: Sequence[Item], constraint: FairnessConstraint, spec: WindowSpec) -> Verdict:
    if len(window) != spec.window_size:
        raise ValueError(f"window has {len(window)} items, expected {spec.window_size}")
    schema = constraint.schema
    lo, hi = constraint.ranges(spec.block_size)
    for b in range(1, spec.k + 1):
        counts = naive_block_counts(window, schema, b, spec.block_size)
        for j, c in enumerate(counts):
            if not lo[j] <= c <= hi[j]:
                return Verdict(False, Violation(b, schema.values[j], c, lo[j], hi[j]))
    return FAIR


def naive_fair_blocks(values: Sequence[str], constraint: FairnessConstraint, s: int) -> int:
    """Recount every length-s window from scratch."""
    schema = constraint.schema
    lo, hi = constraint.ranges(s)
    total = 0
    for i in range(len(values) - s + 1):
        c = Counter(values[i:i + s])
        if all(lo[j] <= c.get(v, 0) <= hi[j] for j, v in enumerate(schema.values)):
            total += 1
    return total


def multiset_permutations(values: Sequence[str]) -> Iterator[tuple[str, ...]]:
    """Distinct orderings of a multiset, each produced once."""
    counts = Counter(values)
    keys = sorted(counts)
    n = len(values)
    out: list[str] = []

    def rec():
        if len(out) == n:
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def brute_force_reorder(items: Sequence, constraint: FairnessConstraint, spec: WindowSpec) -> int:
    """Maximum fair-block count over every distinct ordering of the items' values."""
    values = [x.value if isinstance(x, Item) else x for x in items]
    if len(values) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refuses n={len(values)} > {BRUTE_FORCE_LIMIT}")
    s = spec.block_size
    if len(values) < s:
        raise ValueError("stream shorter than block size")
    schema = constraint.schema
    lo, hi = constraint.ranges(s)
    codes = sorted(schema.index(v) for v in values)
    ell = schema.cardinality
    remaining = [0] * ell
    for c in codes:
        remaining[c] += 1
    n = len(codes)
    seq: list[int] = []
    window = [0] * ell
    best = 0

    # depth-first over distinct orderings; window counts updated incrementally
    def rec(fair_so_far: int):
        nonlocal best
        depth = len(seq)
        if depth == n:
            if fair_so_far > best:
                best = fair_so_far
            return
        for c in range(ell):
            if not remaining[c]:
                continue
            remaining[c] -= 1
            seq.append(c)
            window[c] += 1
            dropped = None
            if depth >= s:
                dropped = seq[depth - s]
                window[dropped] -= 1
            gained = 0
            if depth + 1 >= s and all(lo[j] <= window[j] <= hi[j] for j in range(ell)):
                gained = 1
            rec(fair_so_far + gained)
            if dropped is not None:
                window[dropped] += 1
            window[c] -= 1
            seq.pop()
            remaining[c] += 1

    rec(0)
    return best


class BackwardSketch:
    """Suffix-cumulative counts: entry i covers window positions i..|W|.

    Has no incremental update; every slide is a full rebuild.
    """

    def __init__(self, window: Sequence[Item], schema: AttributeSchema):
        n = len(window)
        m = schema.cardinality - 1
        slot = {v: i for i, v in enumerate(schema.values[:m])}
        entries: list[tuple[int, ...]] = [()] * n
        row = [0] * m
        for i in range(n - 1, -1, -1):
            j = slot.get(window[i].value)
            if j is None and window[i].value not in schema:
                raise ValueError(f"unknown attribute value {window[i].value!r}")
            if j is not None:
                row[j] += 1
            entries[i] = tuple(row)
        self.schema = schema
        self.window_len = n
        self.entries = entries

    def suffix(self, i: int) -> tuple[int, ...]:
        """Stored-value counts over positions i..|W| (1-based); i = |W|+1 is empty."""
        if i == self.window_len + 1:
            return (0,) * (self.schema.cardinality - 1)
        return self.entries[i - 1]

    def block_counts(self, block_index: int, spec: WindowSpec) -> tuple[int, ...]:
        s = spec.block_size
        start = (block_index - 1) * s + 1
        a, b = self.suffix(start), self.suffix(start + s)
        diff = [x - y for x, y in zip(a, b)]
        diff.append(s - sum(diff))
        return tuple(diff)

    def window_counts(self) -> tuple[int, ...]:
        diff = list(self.entries[0])
        diff.append(self.window_len - sum(diff))
        return tuple(diff)


def bsketch_build(window: Sequence[Item], schema: AttributeSchema) -> BackwardSketch:
    return BackwardSketch(window, schema)


def bsketch_monitor(sketch: BackwardSketch, constraint: FairnessConstraint, spec: WindowSpec) -> Verdict:
    lo, hi = constraint.ranges(spec.block_size)
    values = constraint.schema.values
    for b in range(1, spec.k + 1):
        counts = sketch.block_counts(b, spec)
        for j, c in enumerate(counts):
            if not lo[j] <= c <= hi[j]:
                return Verdict(False, Violation(b, values[j], c, lo[j], hi[j]))
    return FAIR
