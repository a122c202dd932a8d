"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and measured figures.
"""

import json
import random
import statistics
import subprocess
import sys
import time

import pytest

from lilguard import entropy as en
from lilguard import guardian as gd
from lilguard import lz77 as lz
from lilguard import simulator as sm


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # Load the compiled match kernels so criterion timings exclude JIT setup.
    lz.compress(b"warmup" * 128)
    lz.decompress(lz.compress(random.Random(0).randbytes(4096)))


@pytest.fixture(scope="module")
def campaign():
    tokens = sm.tokenize(sm.load_corpus("trace"))
    t0 = time.perf_counter()
    runs, summary = sm.paired_campaign(tokens, order=32, budget=8, seeds=range(20))
    elapsed = time.perf_counter() - t0
    return runs, summary, elapsed


def _report(name: str, elapsed: float, detail: str) -> None:
    print(f"PASS {name} [{elapsed:.2f}s] {detail}")


def test_worked_example_exact():
    t0 = time.perf_counter()
    config = lz.WindowConfig(window_len=16, lookahead_len=8, initial_fill="0")
    seq = lz.compress(b"0040040042304237", config)
    triples = [(t.offset, t.length, chr(t.literal)) for t in seq.triples]
    assert triples == [(0, 2, "4"), (5, 6, "2"), (0, 0, "3"), (4, 4, "7")]
    assert lz.encoded_size(seq, 10) == 12
    rendered = "".join(f"{t.offset}{t.length}{chr(t.literal)}" for t in seq.triples)
    assert rendered == "024562003447"
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _report("worked-example", elapsed, f"triples={triples} encoding={rendered}")


def test_round_trip_ten_thousand_inputs():
    t0 = time.perf_counter()
    rng = random.Random(0xC0FFEE)
    configs = [
        lz.WindowConfig(),
        lz.WindowConfig(window_len=1024, lookahead_len=64),
        lz.WindowConfig(window_len=4096, lookahead_len=258),
        lz.WindowConfig(window_len=512, lookahead_len=32, initial_fill=b"\x00"),
        lz.WindowConfig(window_len=64, lookahead_len=16),
    ]

    def draw_len(i):
        if i < 4:
            return (0, 1, 65536, 64 * 1024 - 1)[i]
        u = rng.random()
        if u < 0.70:
            return rng.randrange(0, 512)
        if u < 0.92:
            return rng.randrange(512, 8192)
        return rng.randrange(8192, 65537)

    def draw_data(n):
        kind = rng.randrange(4)
        if kind == 0:
            return rng.randbytes(n)
        if kind == 1:
            return bytes(rng.randrange(97, 101) for _ in range(n))
        if kind == 2:
            unit = rng.randbytes(rng.randrange(1, 24)) or b"z"
            return (unit * (n // len(unit) + 1))[:n]
        return bytes(rng.randrange(32, 127) for _ in range(n))

    total_bytes = 0
    for i in range(10000):
        n = draw_len(i)
        data = draw_data(n)
        config = configs[i % len(configs)]
        seq = lz.compress(data, config)
        assert int(seq.lengths.sum()) + seq.n_triples == len(data)
        assert lz.decompress(seq) == data
        total_bytes += n
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _report("round-trip-10k", elapsed, f"{total_bytes/1e6:.1f} MB across {len(configs)} configs")


def test_entropy_bound_golden_mean():
    t0 = time.perf_counter()
    fib = {1: 2, 2: 3}
    for k in range(3, 9):
        fib[k] = fib[k - 1] + fib[k - 2]
    assert en.enumerate_sigma(en.GOLDEN_MEAN, 7) == fib[7] == 34

    report = en.verify_entropy_bound(en.GOLDEN_MEAN, lookahead_len=8, samples=100, seed=123)
    bound = report.h + report.epsilon
    assert report.upper_bound_holds
    assert report.rho_max <= bound
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _report(
        "entropy-bound", elapsed,
        f"h(7)={report.h:.4f} eps={report.epsilon:.4f} rho_max={report.rho_max:.4f} <= {bound:.4f}",
    )


def test_stopping_rule_fidelity():
    t0 = time.perf_counter()
    rng = random.Random(99)
    state = gd.init(rng.randbytes(2000))
    stop_obs = None
    for i in range(1, 501):
        decision = gd.observe(state, b"A")
        if decision.should_stop:
            stop_obs = (i, decision.checkpoint_delta)
            break
    assert stop_obs is not None and stop_obs[0] == 250 and stop_obs[1] < 20

    state = gd.init(rng.randbytes(2000))
    for _ in range(1000):
        assert not gd.observe(state, rng.randbytes(8)).should_stop
    assert state.checkpoints_run == 4
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _report("stopping-rule", elapsed, f"stop at obs {stop_obs[0]}, delta {stop_obs[1]} < 20")


def test_length_inflation_and_savings(campaign):
    runs, summary, campaign_elapsed = campaign
    t0 = time.perf_counter()
    mean_base = summary.mean_baseline
    mean_degraded = summary.mean_degraded
    assert mean_degraded >= 1.3 * mean_base
    assert summary.mean_savings_pct >= 50.0
    elapsed = campaign_elapsed + time.perf_counter() - t0
    assert elapsed < 300.0
    _report(
        "length-inflation", elapsed,
        f"20 seeds: degraded {mean_degraded:.0f} vs baseline {mean_base:.0f} tokens "
        f"(+{summary.inflation_pct:.0f}%), mean savings {summary.mean_savings_pct:.1f}%",
    )


def test_two_phase_curve(campaign):
    runs, _, _ = campaign
    t0 = time.perf_counter()
    plateaued = [r.guarded for r in runs if r.guarded.stop_reason == gd.REASON_PLATEAU]
    assert plateaued, "no plateau-stopped degraded traces"
    knees = []
    for trace in plateaued:
        slopes = [s for _, _, s in sm.ratio_curve(trace)]
        knee = max(i for i, s in enumerate(slopes) if s >= 0.02) + 1
        early, late = slopes[:knee], slopes[knee:]
        assert late, "no plateau checkpoints after the knee"
        assert statistics.mean(early) > 0.5
        assert all(s < 0.02 for s in late)
        knees.append(knee)
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    _report(
        "two-phase-curve", elapsed,
        f"{len(plateaued)} traces, knees at checkpoints {sorted(set(knees))}",
    )


def test_bench_512k_under_half_a_second():
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "lilguard", "bench", "--size", str(512 * 1024), "--seed", "0"],
        capture_output=True,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    assert report["elapsed_ms"] <= 500.0
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _report("bench-512k", elapsed, f"measured {report['elapsed_ms']} ms for 512 KiB random")


def test_jct_inflation_arithmetic():
    t0 = time.perf_counter()
    base = sm.jct(1.0, 1000, 0.03)
    inflated = sm.jct(1.0, 2000, 0.024)
    assert base == 31.0
    assert inflated == 49.0
    assert inflated > base
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _report("jct-arithmetic", elapsed, f"20% faster tokens, 2x length: {base} -> {inflated} s")
