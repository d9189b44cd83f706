"""Streaming loop: warm up, slide, monitor, and reorder on violation.

An unfair window whose totals meet the per-value minimum ``k*lo`` is reordered
in place.  Otherwise the engine pauses, reads ``landmark_size`` further items,
reorders window plus landmarks together, then emits verdicts for the paused
window and every window slid over the landmarks.  Windows inside a reordered
scope are never reordered a second time.
"""

from __future__ import annotations

import enum
import queue
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .core import FairnessConstraint, Item, SequenceError, Verdict, WindowSpec
from .monitor import feasible_within_window, monitor_bfair
from .reorder import bfair_reorder, count_fair_blocks
from .sketch import ForwardSketch


class Phase(enum.Enum):
    WARMING = "warming"
    MONITORING = "monitoring"
    COLLECTING = "collecting_landmarks"
    DRAINING = "draining"


@dataclass
class WindowVerdict:
    window_id: int
    start: int
    verdict: Verdict
    latency_us: int
    completed_ns: int = field(default=0, compare=False)
    emitted_ns: int = field(default=0, compare=False)


@dataclass
class ReorderApplied:
    window_id: int
    scope: str  # "in_window" | "with_landmarks"
    combo: tuple[int, ...] | None
    secondary_combo: tuple[int, ...] | None
    fair_blocks_before: int
    fair_blocks_after: int
    shortfall: int = 0


@dataclass
class MetricsSnapshot:
    windows: int
    fair_pct: float
    throughput_wps: float
    p50_us: int
    p90_us: int
    fair_block_pct_before: float | None = None
    fair_block_pct_after: float | None = None
    warmed: bool = True


def percentile(sorted_values, q: float) -> int:
    """Nearest-rank percentile of an ascending list; 0 for an empty one."""
    if not sorted_values:
        return 0
    rank = max(1, -(-len(sorted_values) * q // 100))
    return sorted_values[int(rank) - 1]


class Engine:
    def __init__(self, constraint: FairnessConstraint, spec: WindowSpec, metrics_every: int = 1000,
                 clock: Callable[[], int] = time.perf_counter_ns, keep_output: bool = False):
        self.constraint = constraint
        self.spec = spec
        self.metrics_every = metrics_every
        self.clock = clock
        self.phase = Phase.WARMING
        self.window: deque[Item] = deque()
        self.arrivals: deque[int] = deque()
        self.landmarks: list[Item] = []
        self.landmark_arrivals: list[int] = []
        self.sketch: ForwardSketch | None = None
        self.start = 0          # stream position of the current window's first item
        self.protected_until = 0  # windows starting at or before this are not reordered
        self.paused: tuple[int, int] | None = None  # (start, completion time) of the pending window
        self.last_seq: int | None = None
        self.window_id = 0
        self.rebuilds = 0
        self.output: list[Item] | None = [] if keep_output else None
        self._latencies: list[int] = []
        self._fair = 0
        self._busy_ns = 0
        self._blocks_before = 0
        self._blocks_after = 0
        self._blocks_possible = 0

    # -- ingestion -------------------------------------------------------
    def process_item(self, item: Item) -> list:
        if self.phase is Phase.DRAINING:
            raise RuntimeError("engine already finalized")
        if self.last_seq is not None and item.seq <= self.last_seq:
            raise SequenceError(f"seq {item.seq} does not follow {self.last_seq}")
        if item.value not in self.constraint.schema:
            raise ValueError(f"unknown attribute value {item.value!r}")
        self.last_seq = item.seq
        t0 = self.clock()
        events: list = []
        W = self.spec.window_size
        if self.phase is Phase.WARMING:
            self.window.append(item)
            self.arrivals.append(t0)
            if len(self.window) == W:
                self.start = 1
                self._rebuild()
                self.phase = Phase.MONITORING
                self._evaluate(events, t0)
        elif self.phase is Phase.COLLECTING:
            self.landmarks.append(item)
            self.landmark_arrivals.append(t0)
            if len(self.landmarks) == self.spec.landmark_size:
                self._reorder_with_landmarks(events)
        else:
            self._slide_in(item, t0)
            if (self.start - 1) % self.spec.slide == 0:
                self._evaluate(events, t0)
        self._busy_ns += self.clock() - t0
        return events

    def finalize(self) -> list:
        events: list = []
        if self.phase is Phase.COLLECTING:
            self._reorder_with_landmarks(events)
        warmed = self.phase is not Phase.WARMING
        if self.output is not None:
            self.output.extend(self.window)
        self.window.clear()
        self.phase = Phase.DRAINING
        events.append(self.snapshot(warmed))
        return events

    def run(self, items: Iterable[Item]) -> Iterator:
        for item in items:
            yield from self.process_item(item)
        yield from self.finalize()

    # -- internals -------------------------------------------------------
    def _rebuild(self):
        self.sketch = ForwardSketch.build(list(self.window), self.constraint.schema,
                                          self.spec.window_size, origin=self.start)
        self.rebuilds += 1

    def _slide_in(self, item: Item, arrived: int):
        evicted = self.window.popleft()
        self.arrivals.popleft()
        if self.output is not None:
            self.output.append(evicted)
        self.window.append(item)
        self.arrivals.append(arrived)
        self.sketch.slide(item, self.start + self.spec.window_size)
        self.start += 1

    def _emit_verdict(self, events, verdict: Verdict, completed: int):
        self.window_id += 1
        now = self.clock()
        latency = max(0, (now - completed) // 1000)
        events.append(WindowVerdict(self.window_id, self.start, verdict, latency, completed, now))
        self._latencies.append(latency)
        if verdict.fair:
            self._fair += 1
        if self.metrics_every and self.window_id % self.metrics_every == 0:
            events.append(self.snapshot())

    def _evaluate(self, events, completed: int):
        verdict = monitor_bfair(self.sketch, self.constraint, self.spec)
        if verdict.fair or self.start <= self.protected_until:
            self._emit_verdict(events, verdict, completed)
            return
        totals = self.sketch.window_counts()
        if self.spec.landmark_size == 0 or feasible_within_window(totals, self.constraint, self.spec):
            self._reorder_in_window(events, completed)
        else:
            self.phase = Phase.COLLECTING
            self.paused = (self.start, completed)

    def _reorder_in_window(self, events, completed: int):
        items = list(self.window)
        result = bfair_reorder(items, self.constraint, self.spec)
        before = count_fair_blocks(items, self.constraint, self.spec)
        self._record_scope(len(items), before, result.fair_block_count)
        if result.changed:
            self.window = deque(result.stream)
            self._rebuild()
        events.append(ReorderApplied(self.window_id + 1, "in_window", result.primary_combo,
                                     result.secondary_combo, before, result.fair_block_count))
        self.protected_until = self.start
        self._emit_verdict(events, monitor_bfair(self.sketch, self.constraint, self.spec), completed)

    def _reorder_with_landmarks(self, events):
        start, completed = self.paused
        W = self.spec.window_size
        landmarks, arrivals = self.landmarks, self.landmark_arrivals
        self.landmarks, self.landmark_arrivals = [], []
        scope = list(self.window) + landmarks
        result = bfair_reorder(scope, self.constraint, self.spec)
        before = count_fair_blocks(scope, self.constraint, self.spec)
        self._record_scope(len(scope), before, result.fair_block_count)
        shortfall = self.spec.landmark_size - len(landmarks)
        events.append(ReorderApplied(self.window_id + 1, "with_landmarks", result.primary_combo,
                                     result.secondary_combo, before, result.fair_block_count, shortfall))
        stream = result.stream
        self.window = deque(stream[:W])
        self._rebuild()
        self.phase = Phase.MONITORING
        self.paused = None
        self.protected_until = start + len(landmarks)
        self._emit_verdict(events, monitor_bfair(self.sketch, self.constraint, self.spec), completed)
        for item, arrived in zip(stream[W:], arrivals):
            self._slide_in(item, arrived)
            if (self.start - 1) % self.spec.slide == 0:
                self._emit_verdict(events, monitor_bfair(self.sketch, self.constraint, self.spec), arrived)

    def _record_scope(self, n: int, before: int, after: int):
        self._blocks_possible += n - self.spec.block_size + 1
        self._blocks_before += before
        self._blocks_after += after

    def snapshot(self, warmed: bool = True) -> MetricsSnapshot:
        n = self.window_id
        lat = sorted(self._latencies)
        busy = self._busy_ns / 1e9
        possible = self._blocks_possible
        return MetricsSnapshot(
            windows=n,
            fair_pct=round(100.0 * self._fair / n, 4) if n else 0.0,
            throughput_wps=round(n / busy, 2) if busy > 0 else 0.0,
            p50_us=percentile(lat, 50),
            p90_us=percentile(lat, 90),
            fair_block_pct_before=round(100.0 * self._blocks_before / possible, 4) if possible else None,
            fair_block_pct_after=round(100.0 * self._blocks_after / possible, 4) if possible else None,
            warmed=warmed,
        )


def run_pipeline(source: Iterable[Item], engine: Engine, emit: Callable[[object], None],
                 queue_size: int = 4096) -> None:
    """Feed ``engine`` from ``source`` on a reader thread through a bounded queue.

    A full queue blocks the reader, so nothing is dropped; events reach ``emit``
    in order from the calling thread.
    """
    q: queue.Queue = queue.Queue(maxsize=queue_size)
    done = object()
    failure: list[BaseException] = []

    def reader():
        try:
            for item in source:
                q.put(item)
        except BaseException as exc:  # surfaced on the processing side
            failure.append(exc)
        finally:
            q.put(done)

    t = threading.Thread(target=reader, name="fairstream-reader", daemon=True)
    t.start()
    while True:
        item = q.get()
        if item is done:
            break
        for ev in engine.process_item(item):
            emit(ev)
    t.join()
    if failure:
        raise failure[0]
    for ev in engine.finalize():
        emit(ev)
