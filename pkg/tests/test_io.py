import io
import json
from fractions import Fraction

import pytest

from fairstream.core import (FAIR, ConstraintError, Item, SchemaError, SequenceError, Verdict,
                             Violation)
from fairstream.engine import MetricsSnapshot, ReorderApplied, WindowVerdict
from fairstream.io import (RecordError, encode_event, load_config, read_records, strip_timing,
                           write_records)


def test_config_defaults_and_flags():
    cfg = load_config(schema="C,A,H", proportions=".3,.3,.4")
    assert (cfg.window, cfg.block, cfg.landmark, cfg.slide) == (1000, 25, 100, 1)
    assert cfg.proportions == [Fraction(3, 10), Fraction(3, 10), Fraction(2, 5)]
    assert cfg.constraint().ranges(5) == ((1, 1, 2), (2, 2, 2))


def test_config_file_with_flag_override(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"schema": ["C", "A", "H"], "proportions": [0.5, 0.2, 0.3],
                                "window": 15, "block": 5, "landmark": 5}))
    cfg = load_config(str(path), block=3)
    assert cfg.block == 3 and cfg.window == 15
    # JSON floats are read exactly
    assert cfg.proportions[1] == Fraction(1, 5)


@pytest.mark.parametrize("flags", [
    dict(schema="C,A,H", proportions=".5,.5,.5"),
    dict(schema="C,A,H", proportions=".5,.5"),
    dict(schema="C,A,H", proportions=".3,.3,.4", window=10, block=3),
    dict(schema="C,A,H", proportions=".3,.3,.4", landmark=-1),
    dict(schema="C,C", proportions=".5,.5"),
    dict(schema="C,A,H"),
    dict(proportions="1"),
    dict(schema="C,A", proportions="x,1"),
])
def test_config_errors(flags):
    with pytest.raises((ConstraintError, SchemaError)):
        load_config(**flags)


def test_unknown_config_key(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"schema": ["a", "b"], "proportions": [0.5, 0.5], "windw": 4}')
    with pytest.raises(ConstraintError, match="windw"):
        load_config(str(path))


def test_read_csv_with_header_and_blanks():
    src = io.StringIO("seq,value\n1,C\n\n2, A\n")
    assert list(read_records(src)) == [Item(1, "C"), Item(2, "A")]


def test_read_json_lines():
    src = io.StringIO('{"seq": 3, "value": "H"}\n{"seq": 9, "value": "C"}\n')
    assert list(read_records(src)) == [Item(3, "H"), Item(9, "C")]


@pytest.mark.parametrize("text,exc", [
    ("1,C\n1,A\n", SequenceError),
    ("2,C\n1,A\n", SequenceError),
    ("1,Z\n", SchemaError),
    ("1,C,extra\n", RecordError),
    ("x,C\n", RecordError),
    ('{"seq": "1", "value": "C"}\n', RecordError),
    ('{"seq": 1}\n', RecordError),
])
def test_bad_records(text, exc):
    from fairstream.core import AttributeSchema
    with pytest.raises(exc):
        list(read_records(io.StringIO(text), AttributeSchema(("C", "A", "H"))))


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_records_round_trip(fmt):
    items = [Item(1, "C"), Item(4, "A"), Item(5, "H")]
    buf = io.StringIO()
    write_records(buf, items, fmt)
    assert list(read_records(io.StringIO(buf.getvalue()))) == items


def test_event_encoding():
    v = WindowVerdict(3, 3, Verdict(False, Violation(3, "C", 1, 2, 3)), 17)
    assert json.loads(encode_event(v)) == {
        "type": "verdict", "window_id": 3, "fair": False,
        "violation": {"block": 3, "value": "C", "observed": 1, "lo": 2, "hi": 3}, "latency_us": 17}
    assert "violation" not in json.loads(encode_event(WindowVerdict(1, 1, FAIR, 0)))
    r = ReorderApplied(4, "with_landmarks", (2, 1, 2), None, 9, 13)
    assert json.loads(encode_event(r)) == {"type": "reorder", "window_id": 4, "scope": "with_landmarks",
                                           "combo": [2, 1, 2], "fair_blocks_before": 9,
                                           "fair_blocks_after": 13}
    m = MetricsSnapshot(10, 50.0, 1234.5, 3, 9)
    assert strip_timing(encode_event(m)) == {"type": "metrics", "windows": 10, "fair_pct": 50.0}
