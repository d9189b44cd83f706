"""Shared domain types: attribute schema, window geometry, fairness constraints."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Sequence

# slack applied before floor/ceil when a proportion arrives as a binary float
FLOAT_SLACK = 1e-9


class SchemaError(ValueError):
    """An attribute label is not part of the schema."""


class ConstraintError(ValueError):
    """Proportions or window geometry are inconsistent."""


class SequenceError(ValueError):
    """Stream positions arrived out of order."""


@dataclass(frozen=True)
class AttributeSchema:
    values: tuple[str, ...]

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 2:
            raise SchemaError("a protected attribute needs at least two values")
        if len(set(values)) != len(values):
            raise SchemaError(f"duplicate attribute values in {values!r}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(values)})

    @property
    def cardinality(self) -> int:
        return len(self.values)

    def index(self, value: str) -> int:
        try:
            return self._index[value]
        except KeyError:
            raise SchemaError(f"unknown attribute value {value!r}") from None

    def __contains__(self, value) -> bool:
        return value in self._index

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class WindowSpec:
    window_size: int
    block_size: int
    slide: int = 1
    landmark_size: int = 0

    def __post_init__(self):
        for name in ("window_size", "block_size", "slide"):
            if getattr(self, name) < 1:
                raise ConstraintError(f"{name} must be positive")
        if self.landmark_size < 0:
            raise ConstraintError("landmark_size must be nonnegative")
        if self.window_size % self.block_size:
            raise ConstraintError(
                f"block size {self.block_size} does not divide window size {self.window_size}"
            )

    @property
    def k(self) -> int:
        return self.window_size // self.block_size

    def block_of(self, j: int) -> int:
        """1-based block index of 1-based window position ``j``."""
        return -(-j // self.block_size)


@dataclass(frozen=True, slots=True)
class Item:
    seq: int
    value: str


def _as_number(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    return float(x)


@dataclass(frozen=True)
class FairnessConstraint:
    """Per-value target proportions; a block is fair when each value's count
    lies in ``[floor(eps*f*s), ceil(eps*f*s)]``.

    Proportions given as ``Fraction``, ``int`` or decimal strings are kept exact;
    floats go through ``FLOAT_SLACK`` when rounded.
    """

    schema: AttributeSchema
    proportions: Mapping[str, object]
    epsilon: object = 1

    def __post_init__(self):
        props = {v: _as_number(f) for v, f in dict(self.proportions).items()}
        extra = set(props) - set(self.schema.values)
        if extra:
            raise ConstraintError(f"proportions for values outside the schema: {sorted(extra)}")
        missing = [v for v in self.schema.values if v not in props]
        if missing:
            raise ConstraintError(f"missing proportions for {missing}")
        for v, f in props.items():
            if f < 0 or f > 1:
                raise ConstraintError(f"proportion for {v!r} must lie in [0, 1], got {f}")
        total = sum(props.values())
        if abs(total - 1) > 1e-9:
            raise ConstraintError(f"proportions sum to {float(total)}, expected 1")
        eps = _as_number(self.epsilon)
        if eps <= 0:
            raise ConstraintError("epsilon must be positive")
        object.__setattr__(self, "proportions", {v: props[v] for v in self.schema.values})
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "_ranges", {})

    @classmethod
    def from_lists(cls, values: Sequence[str], proportions: Sequence, epsilon=1):
        if len(values) != len(proportions):
            raise ConstraintError("schema and proportions differ in length")
        return cls(AttributeSchema(tuple(values)), dict(zip(values, proportions)), epsilon)

    def ranges(self, block_size: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(lo, hi) vectors in schema order for a block of ``block_size`` items; cached."""
        cached = self._ranges.get(block_size)
        if cached is None:
            pairs = [_round_range(self.epsilon * self.proportions[v] * block_size)
                     for v in self.schema.values]
            cached = (tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
            self._ranges[block_size] = cached
        return cached


def _round_range(x) -> tuple[int, int]:
    if isinstance(x, Fraction):
        return math.floor(x), math.ceil(x)
    return math.floor(x + FLOAT_SLACK), math.ceil(x - FLOAT_SLACK)


def count_range(constraint: FairnessConstraint, spec: WindowSpec, value: str) -> tuple[int, int]:
    i = constraint.schema.index(value)
    lo, hi = constraint.ranges(spec.block_size)
    return lo[i], hi[i]


def valid_combinations(constraint: FairnessConstraint, spec: WindowSpec) -> list[tuple[int, ...]]:
    """All per-block count vectors allowed by the constraint, lexicographic in schema order."""
    lo, hi = constraint.ranges(spec.block_size)
    s = spec.block_size
    if sum(lo) > s or sum(hi) < s:
        return []
    axes = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [v for v in itertools.product(*axes) if sum(v) == s]


def is_fair_counts(counts: Sequence[int], lo: Sequence[int], hi: Sequence[int]) -> bool:
    return all(a <= c <= b for c, a, b in zip(counts, lo, hi))


@dataclass(frozen=True)
class Verdict:
    fair: bool
    violation: "Violation | None" = None


@dataclass(frozen=True)
class Violation:
    block: int
    value: str
    observed: int
    lo: int
    hi: int


FAIR = Verdict(True)


@dataclass
class ReorderResult:
    stream: list[Item]
    fair_block_count: int
    primary_combo: tuple[int, ...] | None
    secondary_combo: tuple[int, ...] | None = None
    changed: bool = True
    plan: object = field(default=None, repr=False)
