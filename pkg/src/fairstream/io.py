"""Configuration, record sources and sinks, and JSON-lines event encoding."""

from __future__ import annotations

import json
import logging
import os
import socket
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Iterator, Sequence

from .core import (AttributeSchema, ConstraintError, FairnessConstraint, Item, SchemaError,
                   SequenceError, WindowSpec)
from .engine import MetricsSnapshot, ReorderApplied, WindowVerdict

log = logging.getLogger("fairstream")


class RecordError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def setup_logging():
    level = os.environ.get("FAIRSTREAM_LOG", "off").lower()
    if level == "off":
        logging.getLogger("fairstream").addHandler(logging.NullHandler())
        return
    logging.basicConfig(level=logging.DEBUG if level == "debug" else logging.INFO,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s", stream=sys.stderr)


@dataclass
class Config:
    schema: list[str] = field(default_factory=list)
    proportions: list = field(default_factory=list)
    window: int = 1000
    block: int = 25
    landmark: int = 100
    slide: int = 1
    epsilon: object = 1
    source: str = "-"
    rate: float | None = None
    output: str = "-"
    metrics_every: int = 1000

    def window_spec(self) -> WindowSpec:
        return WindowSpec(self.window, self.block, self.slide, self.landmark)

    def attribute_schema(self) -> AttributeSchema:
        return AttributeSchema(tuple(self.schema))

    def constraint(self) -> FairnessConstraint:
        return FairnessConstraint.from_lists(self.schema, self.proportions, self.epsilon)

    def validate(self, need_constraint: bool = True) -> "Config":
        if not self.schema:
            raise ConstraintError("schema is required")
        self.attribute_schema()
        for name in ("window", "block", "landmark", "slide", "metrics_every"):
            if getattr(self, name) < 0:
                raise ConstraintError(f"{name} must not be negative")
        self.window_spec()
        if need_constraint:
            if not self.proportions:
                raise ConstraintError("proportions are required")
            self.constraint()
        if self.rate is not None and self.rate <= 0:
            raise ConstraintError("rate must be positive")
        return self


FLAG_FIELDS = {
    "window": "window", "block": "block", "landmark": "landmark", "slide": "slide",
    "epsilon": "epsilon", "schema": "schema", "proportions": "proportions", "source": "source",
    "rate": "rate", "output": "output", "metrics_every": "metrics_every",
}


def _split(text) -> list[str]:
    if isinstance(text, (list, tuple)):
        return [str(t).strip() for t in text]
    return [t.strip() for t in str(text).split(",") if t.strip()]


def _exact(x):
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    try:
        return Fraction(str(x).strip())
    except ValueError:
        raise ConstraintError(f"not a number: {x!r}") from None


def load_config(path: str | None = None, need_constraint: bool = True, **flags) -> Config:
    """Read a JSON config file (optional) and apply non-None flag overrides on top."""
    raw: dict = {}
    if path:
        with open(path) as fh:
            raw = json.load(fh, parse_float=Fraction)
        raw = {k.replace("-", "_"): v for k, v in raw.items()}
    raw.update({k: v for k, v in flags.items() if v is not None})
    unknown = set(raw) - set(FLAG_FIELDS)
    if unknown:
        raise ConstraintError(f"unknown config keys: {sorted(unknown)}")
    cfg = Config()
    for key, value in raw.items():
        if key == "schema":
            value = _split(value)
        elif key == "proportions":
            value = [_exact(p) for p in _split(value)]
        elif key == "epsilon":
            value = _exact(value)
        elif key in ("window", "block", "landmark", "slide", "metrics_every"):
            try:
                value = int(value)
            except (TypeError, ValueError):
                raise ConstraintError(f"{key} must be an integer") from None
        elif key == "rate":
            value = float(value)
        setattr(cfg, key, value)
    return cfg.validate(need_constraint)


# -- records ------------------------------------------------------------------

def _open_lines(source) -> Iterator[str]:
    if hasattr(source, "read"):
        yield from source
        return
    if source in (None, "-"):
        yield from sys.stdin
        return
    if source.startswith("tcp:"):
        hostport = source[4:].lstrip("/")
        host, _, port = hostport.rpartition(":")
        with socket.create_connection((host or "localhost", int(port))) as sock:
            with sock.makefile("r", encoding="utf-8", newline="\n") as fh:
                yield from fh
        return
    with open(source, encoding="utf-8") as fh:
        yield from fh


def parse_line(line: str, line_no: int, fmt: str) -> Item:
    if fmt == "json":
        try:
            obj = json.loads(line)
            seq, value = obj["seq"], obj["value"]
        except (ValueError, KeyError, TypeError) as exc:
            raise RecordError(line_no, f"bad JSON record ({exc})") from None
        if not isinstance(seq, int) or isinstance(seq, bool) or not isinstance(value, str):
            raise RecordError(line_no, "seq must be an integer and value a string")
        return Item(seq, value)
    parts = line.split(",")
    if len(parts) != 2:
        raise RecordError(line_no, f"expected 'seq,value', got {line!r}")
    try:
        seq = int(parts[0])
    except ValueError:
        raise RecordError(line_no, f"seq is not an integer: {parts[0]!r}") from None
    value = parts[1].strip()
    if not value:
        raise RecordError(line_no, "empty value")
    return Item(seq, value)


def read_records(source, schema: AttributeSchema | None = None, rate: float | None = None) -> Iterator[Item]:
    """Yield Items from CSV (``seq,value``) or JSON-lines input; the shape is
    fixed by the first non-empty line."""
    fmt = None
    last = None
    interval = 1.0 / rate if rate else 0.0
    next_at = time.monotonic()
    for line_no, raw in enumerate(_open_lines(source), 1):
        line = raw.strip()
        if not line:
            continue
        if fmt is None:
            fmt = "json" if line.startswith("{") else "csv"
            if fmt == "csv" and line.replace(" ", "").lower() == "seq,value":
                continue
        item = parse_line(line, line_no, fmt)
        if last is not None and item.seq <= last:
            raise SequenceError(f"line {line_no}: seq {item.seq} does not follow {last}")
        if schema is not None and item.value not in schema:
            raise SchemaError(f"line {line_no}: unknown attribute value {item.value!r}")
        last = item.seq
        if interval:
            delay = next_at - time.monotonic()
            if delay > 0:
                time.sleep(delay)
            next_at = max(next_at, time.monotonic()) + interval
        yield item


def write_records(sink: IO[str], items: Iterable[Item], fmt: str = "csv") -> None:
    for it in items:
        if fmt == "json":
            sink.write(json.dumps({"seq": it.seq, "value": it.value}, separators=(",", ":")) + "\n")
        else:
            sink.write(f"{it.seq},{it.value}\n")


# -- events -------------------------------------------------------------------

def event_to_dict(ev) -> dict:
    if isinstance(ev, WindowVerdict):
        d = {"type": "verdict", "window_id": ev.window_id, "fair": ev.verdict.fair}
        v = ev.verdict.violation
        if v is not None:
            d["violation"] = {"block": v.block, "value": v.value, "observed": v.observed,
                              "lo": v.lo, "hi": v.hi}
        d["latency_us"] = int(ev.latency_us)
        return d
    if isinstance(ev, ReorderApplied):
        d = {"type": "reorder", "window_id": ev.window_id, "scope": ev.scope,
             "combo": list(ev.combo) if ev.combo is not None else None,
             "fair_blocks_before": ev.fair_blocks_before, "fair_blocks_after": ev.fair_blocks_after}
        if ev.secondary_combo is not None:
            d["secondary_combo"] = list(ev.secondary_combo)
        if ev.shortfall:
            d["shortfall"] = ev.shortfall
        return d
    if isinstance(ev, MetricsSnapshot):
        d = {"type": "metrics", "windows": ev.windows, "fair_pct": ev.fair_pct,
             "throughput_wps": ev.throughput_wps, "p50_us": ev.p50_us, "p90_us": ev.p90_us}
        if ev.fair_block_pct_before is not None:
            d["fair_block_pct_before"] = ev.fair_block_pct_before
            d["fair_block_pct_after"] = ev.fair_block_pct_after
        if not ev.warmed:
            d["warmed"] = False
        return d
    raise TypeError(f"not an engine event: {ev!r}")


def encode_event(ev) -> str:
    return json.dumps(event_to_dict(ev), separators=(",", ":"))


def write_events(sink: IO[str], events: Iterable) -> None:
    for ev in events:
        sink.write(encode_event(ev) + "\n")


TIMING_FIELDS = ("latency_us", "throughput_wps", "p50_us", "p90_us")


def strip_timing(line: str) -> dict:
    d = json.loads(line)
    for key in TIMING_FIELDS:
        d.pop(key, None)
    return d


def open_sink(path: str | None) -> IO[str]:
    if path in (None, "-"):
        return sys.stdout
    return open(path, "w", encoding="utf-8")


def values_of(items: Sequence[Item]) -> list[str]:
    return [it.value for it in items]
