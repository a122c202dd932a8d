"""Command-line surface: compression utilities, the stream monitor, simulation
campaigns, curve export, and the performance benchmark.

stdout carries machine-readable output only (containers, JSON-lines events,
CSV); human-readable summaries go to stderr.  Exit codes: 0 success or end of
stream, 1 I/O failure, 2 malformed container/format, 3 plateau stop, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import guardian, simulator
from .lz77 import (
    HEADER_SIZE,
    ContainerFormatError,
    WindowConfig,
    compress,
    decompress,
    deserialize,
    serialize,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_FORMAT = 2
EXIT_PLATEAU = 3
EXIT_USAGE = 64

ENV_WINDOW = "LILGUARD_WINDOW"
ENV_LOOKAHEAD = "LILGUARD_LOOKAHEAD"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_geometry() -> WindowConfig:
    kwargs = {}
    if os.environ.get(ENV_WINDOW):
        kwargs["window_len"] = int(os.environ[ENV_WINDOW])
    if os.environ.get(ENV_LOOKAHEAD):
        kwargs["lookahead_len"] = int(os.environ[ENV_LOOKAHEAD])
    return WindowConfig(**kwargs)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(path: str, blob: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(blob)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as fh:
        fh.write(blob)


def cmd_compress(args) -> int:
    data = _read_input(args.input)
    config = _env_geometry()
    if args.window or args.lookahead:
        config = WindowConfig(
            window_len=args.window or config.window_len,
            lookahead_len=args.lookahead or config.lookahead_len,
        )
    blob = serialize(compress(data, config))
    _write_output(args.output, blob)
    print(f"{len(data)} -> {len(blob)} bytes", file=sys.stderr)
    return EXIT_OK


def cmd_decompress(args) -> int:
    blob = _read_input(args.input)
    data = decompress(deserialize(blob))
    _write_output(args.output, data)
    print(f"{len(blob)} -> {len(data)} bytes", file=sys.stderr)
    return EXIT_OK


def _observations(stream, unit: str):
    if unit == "line":
        yield from iter(stream.readline, b"")
    elif unit == "jsonl":
        for raw in iter(stream.readline, b""):
            line = raw.rstrip(b"\r\n")
            if not line:
                continue
            try:
                token = json.loads(line.decode("utf-8"))
            except (ValueError, UnicodeDecodeError) as exc:
                raise ContainerFormatError(f"bad jsonl observation: {exc}") from exc
            if not isinstance(token, str):
                raise ContainerFormatError(f"jsonl observation must be a string: {token!r}")
            yield token.encode("utf-8")
    else:  # chunk:N
        size = int(unit.split(":", 1)[1])
        yield from iter(lambda: stream.read(size), b"")


def _parse_unit(unit: str) -> str:
    if unit in ("line", "jsonl"):
        return unit
    if unit.startswith("chunk:"):
        try:
            size = int(unit.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad chunk size in --unit {unit!r}")
        if size < 1:
            raise UsageError("chunk size must be >= 1")
        return unit
    raise UsageError(f"--unit must be line, chunk:N, or jsonl, got {unit!r}")


def cmd_monitor(args) -> int:
    if args.freq < 1:
        raise UsageError(f"--freq must be >= 1, got {args.freq}")
    if args.threshold < 1:
        raise UsageError(f"--threshold must be >= 1, got {args.threshold}")
    unit = _parse_unit(args.unit)
    config = guardian.GuardianConfig(
        check_freq=args.freq,
        threshold=args.threshold,
        compressor_config=_env_geometry(),
    )
    for note in guardian.tuning_warnings(config):
        print(f"warning: {note}", file=sys.stderr)
    prefill = b""
    if args.prefill:
        with open(args.prefill, "rb") as fh:
            prefill = fh.read()
    state = guardian.init(prefill, config)
    out = sys.stdout
    stream = sys.stdin.buffer
    for obs in _observations(stream, unit):
        prev_last = state.last_compress
        before = state.checkpoints_run
        decision = guardian.observe(state, obs)
        if state.checkpoints_run > before:
            event = {
                "event": "stop" if decision.should_stop else "check",
                "tokens": state.token_count,
                "compressed": state.cur_compress,
                "delta": state.cur_compress - prev_last,
            }
            if decision.should_stop:
                event["reason"] = decision.reason
            out.write(json.dumps(event) + "\n")
            out.flush()
        if decision.should_stop:
            while stream.read(65536):
                pass
            return EXIT_PLATEAU
    event = {"event": "eos", "tokens": state.token_count, "compressed": state.cur_compress}
    out.write(json.dumps(event) + "\n")
    out.flush()
    return EXIT_OK


def _load_tokens(corpus: str) -> list[str]:
    if corpus in ("trace", "chronicle"):
        text = simulator.load_corpus(corpus)
    else:
        with open(corpus, "r", encoding="utf-8") as fh:
            text = fh.read()
    return simulator.tokenize(text)


def _parse_budgets(spec: str) -> list:
    budgets = []
    for part in spec.split(","):
        part = part.strip()
        if part == "unlimited":
            budgets.append(None)
        else:
            try:
                value = int(part)
            except ValueError:
                raise UsageError(f"bad budget {part!r}")
            if value < 1:
                raise UsageError(f"budget must be >= 1 or 'unlimited', got {part}")
            budgets.append(value)
    if not budgets:
        raise UsageError("no budgets given")
    return budgets


def cmd_simulate(args) -> int:
    if args.seeds < 1:
        raise UsageError(f"--seeds must be >= 1, got {args.seeds}")
    tokens = _load_tokens(args.corpus)
    budgets = _parse_budgets(args.budget)
    rows = []
    for budget in budgets:
        runs, summary = simulator.paired_campaign(
            tokens,
            order=args.order,
            budget=budget,
            seeds=range(args.seeds),
            max_len_factor=args.max_len_factor,
        )
        label = "unlimited" if budget is None else str(budget)
        for run in runs:
            rows.extend(
                simulator.trace_rows(f"b{label}-s{run.seed}-baseline", run.seed, None, run.baseline)
            )
            rows.extend(
                simulator.trace_rows(f"b{label}-s{run.seed}-plain", run.seed, budget, run.degraded)
            )
            rows.extend(
                simulator.trace_rows(f"b{label}-s{run.seed}-guarded", run.seed, budget, run.guarded)
            )
        print(
            f"budget {label}: mean baseline {summary.mean_baseline:.0f} tokens, "
            f"mean degraded {summary.mean_degraded:.0f} tokens, "
            f"inflation {summary.inflation_pct:.1f}%, "
            f"mean savings {summary.mean_savings_pct:.1f}%",
            file=sys.stderr,
        )
    rows.sort(key=lambda r: (r["run_id"], r["checkpoint_index"]))
    _write_rows(rows, args.out)
    return EXIT_OK


def _write_rows(rows, out: str) -> None:
    if out == "-":
        import csv

        writer = csv.DictWriter(sys.stdout, fieldnames=simulator.TRACE_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.flush()
    else:
        simulator.write_trace_csv(rows, out)


def cmd_curve(args) -> int:
    tokens = _load_tokens(args.corpus)
    budgets = _parse_budgets(args.budget)
    if len(budgets) != 1:
        raise UsageError("curve takes exactly one --budget")
    budget = budgets[0]
    runs, _ = simulator.paired_campaign(
        tokens,
        order=args.order,
        budget=budget,
        seeds=[args.seed],
        max_len_factor=args.max_len_factor,
    )
    run = runs[0]
    label = "unlimited" if budget is None else str(budget)
    rows = simulator.trace_rows(f"b{label}-s{run.seed}-guarded", run.seed, budget, run.guarded)
    _write_rows(rows, args.out)
    print(
        f"guarded run: {run.guarded.token_count} tokens, {run.guarded.stop_reason}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.size < 1:
        raise UsageError(f"--size must be >= 1, got {args.size}")
    config = _env_geometry()
    data = random.Random(args.seed).randbytes(args.size)
    compress(b"warmup" * 64, config)  # load/compile the kernel outside the timing
    t0 = time.perf_counter()
    seq = compress(data, config)
    elapsed = time.perf_counter() - t0
    compressed_len = HEADER_SIZE + 5 * seq.n_triples
    report = {
        "size_bytes": args.size,
        "elapsed_ms": round(elapsed * 1000.0, 3),
        "throughput_mb_s": round(args.size / (1 << 20) / elapsed, 2),
        "compressed_len": compressed_len,
        "ratio": round(compressed_len / args.size, 4),
    }
    print(json.dumps(report))
    print(
        f"compressed {args.size} random bytes in {report['elapsed_ms']} ms "
        f"({report['throughput_mb_s']} MiB/s)",
        file=sys.stderr,
    )
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="lilguard", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a file or stdin into a container")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--window", type=int, default=0, help="total window length")
    p.add_argument("--lookahead", type=int, default=0, help="lookahead length")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("decompress", help="invert a container back to bytes")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_decompress)

    p = sub.add_parser("monitor", help="watch a token stream for an information plateau")
    p.add_argument("--freq", type=int, default=guardian.DEFAULT_CHECK_FREQ)
    p.add_argument("--threshold", type=int, default=guardian.DEFAULT_THRESHOLD)
    p.add_argument("--unit", default="line", help="line, chunk:N, or jsonl")
    p.add_argument("--prefill", default="", help="file whose bytes seed the buffer")
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("simulate", help="paired guarded/unguarded campaigns to CSV")
    p.add_argument("--budget", default="8,unlimited")
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--order", type=int, default=32)
    p.add_argument("--corpus", default="trace")
    p.add_argument("--max-len-factor", type=int, default=3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("curve", help="export one guarded degraded trace as CSV")
    p.add_argument("--budget", default="8")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=32)
    p.add_argument("--corpus", default="trace")
    p.add_argument("--max-len-factor", type=int, default=3)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("bench", help="time the compressor on seeded random bytes")
    p.add_argument("--size", type=int, default=512 * 1024)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContainerFormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
