"""Command line entry point: ``fairstream {monitor,reorder,sketch-dump,bench,gen}``."""

from __future__ import annotations

import argparse
import json
import sys

from .bench import SUITES, run_bench, write_csv
from .core import ConstraintError, SchemaError, SequenceError, WindowSpec
from .engine import Engine, run_pipeline
from .gen import skewed_stream
from .io import (RecordError, encode_event, load_config, open_sink, read_records, setup_logging,
                 write_records)
from .reorder import bfair_reorder, count_fair_blocks
from .sketch import ForwardSketch

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


def _config_flags(p: argparse.ArgumentParser, io_flags: bool = True):
    p.add_argument("--config", help="JSON config file; flags override its values")
    p.add_argument("--window", type=int)
    p.add_argument("--block", type=int)
    p.add_argument("--landmark", type=int)
    p.add_argument("--slide", type=int)
    p.add_argument("--epsilon")
    p.add_argument("--schema", help="comma separated attribute values, in sketch order")
    p.add_argument("--proportions", help="comma separated, aligned with --schema")
    if io_flags:
        p.add_argument("--source", help="file path, '-' for stdin, or tcp:HOST:PORT")
        p.add_argument("--rate", type=float, help="max items per second")
        p.add_argument("--output", help="output path, '-' for stdout")
        p.add_argument("--metrics-every", type=int, dest="metrics_every")


def _flags(args, *names):
    return {n: getattr(args, n, None) for n in names}


CONFIG_NAMES = ("window", "block", "landmark", "slide", "epsilon", "schema", "proportions",
                "source", "rate", "output", "metrics_every")


def cmd_monitor(args) -> int:
    cfg = load_config(args.config, **_flags(args, *CONFIG_NAMES))
    constraint, spec = cfg.constraint(), cfg.window_spec()
    engine = Engine(constraint, spec, metrics_every=cfg.metrics_every,
                    keep_output=args.emit_stream is not None)
    sink = open_sink(cfg.output)
    try:
        source = read_records(cfg.source, constraint.schema, cfg.rate)
        run_pipeline(source, engine, lambda ev: sink.write(encode_event(ev) + "\n"), args.queue_size)
    finally:
        if sink is not sys.stdout:
            sink.close()
        else:
            sink.flush()
    if args.emit_stream is not None:
        with open_sink(args.emit_stream) as out:
            write_records(out, engine.output)
    return EXIT_OK


def cmd_reorder(args) -> int:
    cfg = load_config(args.config, **_flags(args, *CONFIG_NAMES))
    constraint = cfg.constraint()
    spec = WindowSpec(cfg.block, cfg.block)
    items = list(read_records(args.input or cfg.source, constraint.schema))
    result = bfair_reorder(items, constraint, spec)
    sink = open_sink(cfg.output)
    write_records(sink, result.stream, args.format)
    if sink is not sys.stdout:
        sink.close()
    summary = {
        "items": len(items),
        "fair_blocks_before": count_fair_blocks(items, constraint, spec),
        "fair_blocks_after": result.fair_block_count,
        "possible_blocks": len(items) - spec.block_size + 1,
        "combo": list(result.primary_combo) if result.primary_combo else None,
        "secondary_combo": list(result.secondary_combo) if result.secondary_combo else None,
        "changed": result.changed,
    }
    line = json.dumps(summary, separators=(",", ":"))
    if args.summary in (None, "-"):
        print(line, file=sys.stderr)
    else:
        with open(args.summary, "w") as fh:
            fh.write(line + "\n")
    return EXIT_OK


def cmd_sketch_dump(args) -> int:
    flags = _flags(args, "window", "block", "schema")
    if flags["block"] is None and flags["window"] is not None:
        flags["block"] = flags["window"]  # block geometry plays no part in the dump
    cfg = load_config(args.config, need_constraint=False, **flags)
    schema = cfg.attribute_schema()
    items = list(read_records(args.input, schema))
    W = cfg.window
    if len(items) < W + args.slides:
        raise ConstraintError(f"need {W + args.slides} items, input has {len(items)}")
    sk = ForwardSketch.build(items[:W], schema)
    for it in items[W:W + args.slides]:
        sk.slide(it, sk.origin_seq + W)
    out = sys.stdout
    out.write(sk.dump() + "\n")
    if args.slides:
        out.write("# base " + " ".join(map(str, sk.base)) + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    params = json.loads(args.params) if args.params else {}
    rows = run_bench(args.suite, params)
    sink = open_sink(args.output)
    write_csv(sink, rows)
    if sink is not sys.stdout:
        sink.close()
    return EXIT_OK


def cmd_gen(args) -> int:
    values = [v.strip() for v in args.schema.split(",") if v.strip()]
    weights = [float(w) for w in args.weights.split(",")] if args.weights else None
    if weights is not None and len(weights) != len(values):
        raise ConstraintError("--weights must align with --schema")
    items = skewed_stream(values, args.n, weights, args.burstiness, args.seed)
    sink = open_sink(args.output)
    write_records(sink, items, args.format)
    if sink is not sys.stdout:
        sink.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairstream",
                                     description="Block-level fairness monitoring and reordering for streams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("monitor", help="run the streaming engine over a source")
    _config_flags(p)
    p.add_argument("--emit-stream", help="also write the (possibly reordered) item stream here")
    p.add_argument("--queue-size", type=int, default=4096)
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("reorder", help="reorder a whole file offline")
    _config_flags(p)
    p.add_argument("--input", help="records to reorder (defaults to --source)")
    p.add_argument("--summary", help="where to write the JSON summary (default stderr)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_reorder)

    p = sub.add_parser("sketch-dump", help="print forward sketch entries for the first window")
    _config_flags(p, io_flags=False)
    p.add_argument("--input", "--source", dest="input", required=True)
    p.add_argument("--slides", type=int, default=0, help="slide the window this many items first")
    p.set_defaults(func=cmd_sketch_dump)

    p = sub.add_parser("bench", help="run a benchmark suite and print CSV rows")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--params", help="JSON object of suite parameters")
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="emit a synthetic skewed stream")
    p.add_argument("--schema", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weights")
    p.add_argument("--burstiness", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_gen)
    return parser


def cli_main(argv=None) -> int:
    setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConstraintError, SchemaError, SequenceError, RecordError) as exc:
        print(f"fairstream: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"fairstream: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
