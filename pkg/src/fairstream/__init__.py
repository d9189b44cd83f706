"""Block-level group fairness over count-based sliding windows."""

from .core import (AttributeSchema, ConstraintError, FairnessConstraint, Item, ReorderResult,
                   SchemaError, SequenceError, Verdict, Violation, WindowSpec, count_range,
                   valid_combinations)
from .engine import Engine, MetricsSnapshot, ReorderApplied, WindowVerdict
from .monitor import feasible_within_window, monitor_bfair
from .reorder import bfair_reorder, count_fair_blocks, extended_prefix, ibc, max_reorder
from .sketch import ForwardSketch

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema", "ConstraintError", "FairnessConstraint", "Item", "ReorderResult",
    "SchemaError", "SequenceError", "Verdict", "Violation", "WindowSpec", "count_range",
    "valid_combinations", "Engine", "MetricsSnapshot", "ReorderApplied", "WindowVerdict",
    "feasible_within_window", "monitor_bfair", "bfair_reorder", "count_fair_blocks",
    "extended_prefix", "ibc", "max_reorder", "ForwardSketch",
]
