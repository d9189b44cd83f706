import io

from fairstream.bench import SUITES, bench_e2e, run_bench, write_csv
from fairstream.gen import periodic_stream, skewed_stream
from fairstream.reorder import count_fair_blocks
from fairstream.core import FairnessConstraint, WindowSpec


def test_every_suite_runs_small():
    small = {"windows": [50], "blocks": [5], "window": 50, "iterations": 20, "rebuilds": 5,
             "sizes": [60], "n_windows": 50}
    for suite in SUITES:
        rows = run_bench(suite, small)
        assert rows and all(r.mean_us > 0 for r in rows)
    buf = io.StringIO()
    write_csv(buf, rows)
    assert buf.getvalue().splitlines()[0] == \
        "suite,window,block,cardinality,landmark,mean_us,p90_us,throughput_wps,peak_mem_kb"


def test_e2e_counts_windows():
    r = bench_e2e(window=100, block=10, n_windows=300)
    assert r.throughput_wps > 0


def test_periodic_stream_is_fair_everywhere():
    c = FairnessConstraint.from_lists(["a", "b", "c"], [".4", ".4", ".2"])
    items = periodic_stream(["a", "b", "c"], (2, 2, 1), 103, seed=9)
    assert count_fair_blocks(items, c, WindowSpec(5, 5)) == 99


def test_skewed_stream_is_seeded():
    a = skewed_stream(["x", "y"], 100, [9, 1], burstiness=0.3, seed=5)
    assert a == skewed_stream(["x", "y"], 100, [9, 1], burstiness=0.3, seed=5)
    assert [i.seq for i in a] == list(range(1, 101))
