"""Benchmark harness: per-operation timings reported as CSV rows."""

from __future__ import annotations

import csv
import resource
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import IO, Iterable

from .core import FairnessConstraint, WindowSpec, valid_combinations
from .engine import Engine, percentile
from .gen import periodic_stream, skewed_stream
from .monitor import monitor_bfair
from .oracle import BackwardSketch, bsketch_monitor
from .reorder import bfair_reorder
from .sketch import ForwardSketch

SUITES = ("fsketch-vs-bsketch", "slide-cost", "monitor-throughput", "reorder-runtime", "e2e")


@dataclass
class BenchReport:
    suite: str
    window: int
    block: int
    cardinality: int
    landmark: int
    mean_us: float
    p90_us: float
    throughput_wps: float
    peak_mem_kb: int


def peak_mem_kb() -> int:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss


def uniform_constraint(ell: int) -> FairnessConstraint:
    values = [f"g{i}" for i in range(ell)]
    return FairnessConstraint.from_lists(values, [Fraction(1, ell)] * ell)


def _timed(fn, iterations: int) -> list[int]:
    """Per-call nanoseconds after discarding a 10% warm-up."""
    warm = max(1, iterations // 10)
    for _ in range(warm):
        fn()
    out = []
    clock = time.perf_counter_ns
    for _ in range(iterations):
        t = clock()
        fn()
        out.append(clock() - t)
    return out


def _report(suite, spec, ell, samples_ns) -> BenchReport:
    samples = sorted(samples_ns)
    mean = sum(samples) / len(samples) / 1000
    return BenchReport(suite, spec.window_size, spec.block_size, ell, spec.landmark_size,
                       round(mean, 3), round(percentile(samples, 90) / 1000, 3),
                       round(1e6 / mean, 1) if mean else 0.0, peak_mem_kb())


def _fair_fixture(window, block, ell, extra, seed=0):
    c = uniform_constraint(ell)
    spec = WindowSpec(window, block)
    combo = valid_combinations(c, spec)[0]
    items = periodic_stream(c.schema.values, combo, window + extra, seed=seed)
    return c, spec, items


def bench_slide(window, block=25, ell=5, iterations=20000, suite="slide-cost"):
    c, spec, items = _fair_fixture(window, block, ell, iterations + iterations // 10 + 1)
    sk = ForwardSketch.build(items[:window], c.schema)
    feed = iter(items[window:])
    return _report(suite, spec, ell, _timed(lambda: sk.slide(next(feed)), iterations))


def bench_bsketch(window, block=25, ell=5, iterations=200):
    c, spec, items = _fair_fixture(window, block, ell, iterations + iterations // 10 + 1)
    pos = [0]

    def step():
        pos[0] += 1
        BackwardSketch(items[pos[0]:pos[0] + window], c.schema)

    return _report("bsketch-rebuild", spec, ell, _timed(step, iterations))


def bench_monitor(window, block, ell, iterations=5000):
    """Slide plus full fair-window check per iteration."""
    c, spec, items = _fair_fixture(window, block, ell, iterations + iterations // 10 + 1)
    sk = ForwardSketch.build(items[:window], c.schema)
    feed = iter(items[window:])

    def step():
        sk.slide(next(feed))
        monitor_bfair(sk, c, spec)

    return _report("monitor-throughput", spec, ell, _timed(step, iterations))


def bench_bsketch_monitor(window, block, ell, iterations=200):
    c, spec, items = _fair_fixture(window, block, ell, iterations + iterations // 10 + 1)
    pos = [0]

    def step():
        pos[0] += 1
        bsketch_monitor(BackwardSketch(items[pos[0]:pos[0] + window], c.schema), c, spec)

    return _report("bsketch-monitor", spec, ell, _timed(step, iterations))


def bench_reorder(n, block=25, ell=5, iterations=20, seed=0):
    c = FairnessConstraint.from_lists([f"g{i}" for i in range(ell)],
                                      [Fraction(1, ell)] * ell)
    spec = WindowSpec(block, block)
    items = skewed_stream(c.schema.values, n, weights=[ell - i for i in range(ell)], seed=seed)
    rep = _report("reorder-runtime", spec, ell, _timed(lambda: bfair_reorder(items, c, spec), iterations))
    rep.window = n
    return rep


def bench_e2e(window=1000, block=25, ell=5, n_windows=20000, seed=0) -> BenchReport:
    """Engine over a stream that never needs reordering; throughput in windows per second."""
    c, spec, items = _fair_fixture(window, block, ell, n_windows - 1, seed=seed)
    spec = WindowSpec(window, block, 1, 100)
    eng = Engine(c, spec, metrics_every=0)
    t = time.perf_counter_ns()
    for it in items:
        eng.process_item(it)
    elapsed = time.perf_counter_ns() - t
    snap = eng.snapshot()
    per = elapsed / max(1, snap.windows) / 1000
    return BenchReport("e2e", window, block, ell, 100, round(per, 3), float(snap.p90_us),
                       round(snap.windows / (elapsed / 1e9), 1), peak_mem_kb())


def run_bench(suite: str, params: dict | None = None) -> list[BenchReport]:
    p = dict(params or {})
    if suite == "fsketch-vs-bsketch":
        rows = []
        for w in p.get("windows", (250, 500, 1000)):
            f = bench_slide(w, p.get("block", 25), p.get("ell", 5), p.get("iterations", 5000),
                            suite="fsketch-slide")
            rows.append(f)
            rows.append(bench_bsketch(w, p.get("block", 25), p.get("ell", 5), p.get("rebuilds", 200)))
        return rows
    if suite == "slide-cost":
        return [bench_slide(w, p.get("block", 25), p.get("ell", 5), p.get("iterations", 20000))
                for w in p.get("windows", (1000, 2000, 4000, 8000))]
    if suite == "monitor-throughput":
        rows = []
        ell = p.get("ell", 5)
        for w in p.get("windows", (500, 1000, 2000)):
            rows.append(bench_monitor(w, p.get("block", 25), ell, p.get("iterations", 5000)))
        for s in p.get("blocks", (25, 100, 250)):
            rows.append(bench_monitor(p.get("window", 1000), s, ell, p.get("iterations", 5000)))
        return rows
    if suite == "reorder-runtime":
        return [bench_reorder(n, p.get("block", 25), p.get("ell", 5), p.get("iterations", 20))
                for n in p.get("sizes", (1100, 2000, 4000, 8000))]
    if suite == "e2e":
        return [bench_e2e(p.get("window", 1000), p.get("block", 25), p.get("ell", 5),
                          p.get("n_windows", 20000))]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


CSV_COLUMNS = [f.name for f in fields(BenchReport)]


def write_csv(sink: IO[str], rows: Iterable[BenchReport], header: bool = True) -> None:
    w = csv.DictWriter(sink, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if header:
        w.writeheader()
    for r in rows:
        w.writerow(asdict(r))
