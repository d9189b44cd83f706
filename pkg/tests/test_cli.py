import json
import subprocess
import sys
from pathlib import Path

import pytest

from fairstream.cli import cli_main
from fairstream.io import strip_timing

DATA = Path(__file__).parent / "data"
C2 = ["--schema", "C,A,H", "--proportions", ".5,.2,.3"]


def test_monitor_running_example(tmp_path, capsys):
    out = tmp_path / "events.jsonl"
    stream = tmp_path / "stream.csv"
    rc = cli_main(["monitor", *C2, "--window", "15", "--block", "5", "--landmark", "5",
                   "--source", str(DATA / "window_landmarks.csv"), "--output", str(out), "--emit-stream", str(stream)])
    assert rc == 0
    events = [strip_timing(l) for l in out.read_text().splitlines()]
    assert events[0]["type"] == "reorder" and events[0]["fair_blocks_after"] == 13
    assert [e["window_id"] for e in events if e["type"] == "verdict"] == list(range(1, 7))
    assert events[-1]["type"] == "metrics"
    assert len(stream.read_text().splitlines()) == 20


def test_reorder_subcommand(tmp_path):
    out, summary = tmp_path / "out.csv", tmp_path / "sum.json"
    rc = cli_main(["reorder", *C2, "--block", "5", "--input", str(DATA / "window_landmarks.csv"),
                   "--output", str(out), "--summary", str(summary)])
    assert rc == 0
    values = [l.split(",")[1] for l in out.read_text().split()]
    assert values == "A H C C H A H C C H A H C C H A H A A A".split()
    s = json.loads(summary.read_text())
    assert s["fair_blocks_after"] == 13 and s["combo"] == [2, 1, 2] and s["possible_blocks"] == 16


def test_sketch_dump(capsys):
    assert cli_main(["sketch-dump", "--window", "10", "--schema", "C,A,H",
                     "--input", str(DATA / "window15.csv")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["1 0", "2 0", "2 1", "2 1", "2 1", "3 1", "3 2", "4 2", "4 2", "4 2"]


def test_gen_and_bench(tmp_path, capsys):
    out = tmp_path / "g.csv"
    assert cli_main(["gen", "--schema", "a,b", "--n", "50", "--weights", "3,1", "--output", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 50
    assert cli_main(["bench", "--suite", "slide-cost",
                     "--params", '{"windows": [50], "iterations": 50}']) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.startswith("suite,window,block")


@pytest.mark.parametrize("argv,code", [
    (["monitor", "--schema", "C,A,H", "--proportions", ".5,.5,.5", "--source", "x"], 1),
    (["monitor", *C2, "--window", "15", "--block", "5", "--source", "/nonexistent/file"], 2),
    (["sketch-dump", "--window", "40", "--schema", "C,A,H", "--input", str(DATA / "window15.csv")], 1),
])
def test_exit_codes(argv, code, capsys):
    assert cli_main(argv) == code
    assert capsys.readouterr().err.startswith("fairstream:")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fairstream.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "monitor" in proc.stdout
