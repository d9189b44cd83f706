"""Forward sketch: cumulative counts of the first l-1 attribute values per window position.

Entries are cumulative from the last rebuild and live in a ring buffer; ``base``
holds the cumulative counts of everything evicted since then, so every query
subtracts it.  A slide is one ring write plus one vector add.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import AttributeSchema, Item, SequenceError, WindowSpec


class ForwardSketch:
    __slots__ = ("schema", "window_len", "entries", "base", "head", "origin_seq", "_slot", "_zero")

    def __init__(self, schema: AttributeSchema, window_len: int):
        self.schema = schema
        self.window_len = window_len
        m = schema.cardinality - 1
        self._zero = (0,) * m
        self.entries: list[tuple[int, ...]] = [self._zero] * window_len
        self.base: tuple[int, ...] = self._zero
        self.head = 0
        self.origin_seq = 1
        # value -> index into the stored vector, or None for the inferred last value
        self._slot = {v: (i if i < m else None) for i, v in enumerate(schema.values)}

    @classmethod
    def build(cls, window: Sequence[Item], schema: AttributeSchema,
              window_len: int | None = None, origin: int | None = None) -> "ForwardSketch":
        n = len(window) if window_len is None else window_len
        if len(window) != n:
            raise ValueError(f"window has {len(window)} items, expected {n}")
        if n < 1:
            raise ValueError("window must be nonempty")
        sk = cls(schema, n)
        sk.origin_seq = window[0].seq if origin is None else origin
        slot = sk._slot
        row = [0] * (schema.cardinality - 1)
        entries = sk.entries
        for i, item in enumerate(window):
            try:
                j = slot[item.value]
            except KeyError:
                raise ValueError(f"unknown attribute value {item.value!r}") from None
            if j is not None:
                row[j] += 1
            entries[i] = tuple(row)
        return sk

    def _indicator_add(self, vec: tuple[int, ...], value: str) -> tuple[int, ...]:
        try:
            j = self._slot[value]
        except KeyError:
            raise ValueError(f"unknown attribute value {value!r}") from None
        if j is None:
            return vec
        lst = list(vec)
        lst[j] += 1
        return tuple(lst)

    def slide(self, new_item: Item, position: int | None = None) -> "ForwardSketch":
        """Evict the oldest item and append ``new_item``.

        ``position`` is the stream position of the new item; it defaults to
        ``new_item.seq`` and must equal ``origin_seq + window_len``.
        """
        pos = new_item.seq if position is None else position
        expected = self.origin_seq + self.window_len
        if pos != expected:
            raise SequenceError(f"slide expected position {expected}, got {pos}")
        entries = self.entries
        head = self.head
        last = entries[head - 1]
        # the evicted entry is exactly the cumulative count through the evicted item
        self.base = entries[head]
        entries[head] = self._indicator_add(last, new_item.value)
        self.head = head + 1 if head + 1 < self.window_len else 0
        self.origin_seq += 1
        return self

    def entry(self, i: int) -> tuple[int, ...]:
        """Raw cumulative vector at 1-based window position ``i`` (base not subtracted)."""
        if not 1 <= i <= self.window_len:
            raise IndexError(f"position {i} outside window of {self.window_len}")
        return self.entries[(self.head + i - 1) % self.window_len]

    def relative(self, i: int) -> tuple[int, ...]:
        """Stored-value counts over window positions 1..i."""
        if i == 0:
            return self._zero
        e = self.entry(i)
        return tuple(a - b for a, b in zip(e, self.base))

    def raw_entries(self) -> list[tuple[int, ...]]:
        return [self.entry(i) for i in range(1, self.window_len + 1)]

    def block_counts(self, block_index: int, spec: WindowSpec) -> tuple[int, ...]:
        s = spec.block_size
        if spec.window_size != self.window_len:
            raise ValueError("window spec does not match sketch width")
        if not 1 <= block_index <= spec.k:
            raise IndexError(f"block {block_index} outside 1..{spec.k}")
        cur = self.entry(block_index * s)
        prev = self.base if block_index == 1 else self.entry((block_index - 1) * s)
        diff = [a - b for a, b in zip(cur, prev)]
        diff.append(s - sum(diff))
        return tuple(diff)

    def window_counts(self) -> tuple[int, ...]:
        diff = list(self.relative(self.window_len))
        diff.append(self.window_len - sum(diff))
        return tuple(diff)

    def dump(self) -> str:
        """One line per window position: raw stored counts, space separated."""
        return "\n".join(" ".join(map(str, e)) for e in self.raw_entries())


def build(window: Sequence[Item], schema: AttributeSchema) -> ForwardSketch:
    return ForwardSketch.build(window, schema)


def slide(sketch: ForwardSketch, new_item: Item) -> ForwardSketch:
    return sketch.slide(new_item)


def block_counts(sketch: ForwardSketch, block_index: int, spec: WindowSpec) -> tuple[int, ...]:
    return sketch.block_counts(block_index, spec)


def window_counts(sketch: ForwardSketch) -> tuple[int, ...]:
    return sketch.window_counts()


def value_counts(values: Iterable[str], schema: AttributeSchema) -> list[int]:
    counts = [0] * schema.cardinality
    for v in values:
        counts[schema.index(v)] += 1
    return counts
