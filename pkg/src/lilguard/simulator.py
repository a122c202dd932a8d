"""Desk-scale decode simulator: an n-gram generator with a context budget.

The generator conditions on the last min(order, context_budget) tokens, so a
budget below the trained order discards long-range state, the walk falls
into repetitive orbits, and output length inflates until a cap or a monitor
stops it.  Traces record (original bytes, compressed bytes) at a fixed token
cadence to expose the two-phase compressed-length curve.
"""

from __future__ import annotations

import csv
import random
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from .guardian import (
    REASON_CONTEXT,
    REASON_EOS,
    REASON_PLATEAU,
    GuardianConfig,
    init as guardian_init,
    observe as guardian_observe,
)
from .lz77 import compressed_size

DEFAULT_EOS = "\x03"

TRACE_CSV_COLUMNS = [
    "run_id",
    "seed",
    "budget",
    "checkpoint_index",
    "original_len",
    "compressed_len",
    "slope",
    "stop_reason",
    "token_count",
]


class TrainingError(ValueError):
    """Corpus too short for the requested order."""


class InsufficientDataError(ValueError):
    """Fewer checkpoints than a curve needs."""


_TOKEN_RE = re.compile(r"\S+\s*", re.DOTALL)


def tokenize(text: str) -> list[str]:
    """Split text into words that keep their trailing whitespace.

    The concatenation of the tokens reproduces the text, so generated token
    streams can be measured byte-for-byte.
    """
    return _TOKEN_RE.findall(text)


def load_corpus(name: str) -> str:
    """Read one of the bundled corpora ("trace" or "chronicle")."""
    path = resources.files("lilguard").joinpath("data", f"{name}_corpus.txt")
    return path.read_text(encoding="utf-8")


@dataclass
class NGramModel:
    """Maximum-likelihood transition table over fixed-length contexts."""

    order: int
    table: dict[tuple[str, ...], dict[str, float]]
    vocabulary: frozenset[str]
    _counts: dict[tuple[str, ...], dict[str, int]] = field(repr=False, default_factory=dict)
    _marginals: dict[int, dict[tuple[str, ...], dict[str, int]]] = field(
        repr=False, default_factory=dict
    )

    def context_counts(self, length: int) -> dict[tuple[str, ...], dict[str, int]]:
        """Transition counts marginalized to the trailing `length` tokens."""
        if length == self.order:
            return self._counts
        cached = self._marginals.get(length)
        if cached is None:
            cached = {}
            for ctx, nxt in self._counts.items():
                suffix = ctx[self.order - length:]
                bucket = cached.setdefault(suffix, {})
                for sym, c in nxt.items():
                    bucket[sym] = bucket.get(sym, 0) + c
            self._marginals[length] = cached
        return cached


def train(corpus: Sequence[str], order: int) -> NGramModel:
    """Count order-length contexts and normalize them to distributions."""
    if order < 1:
        raise TrainingError(f"order must be >= 1, got {order}")
    symbols = list(corpus)
    if len(symbols) <= order:
        raise TrainingError(f"corpus of {len(symbols)} symbols cannot train order {order}")
    counts: dict[tuple[str, ...], dict[str, int]] = {}
    for i in range(order, len(symbols)):
        ctx = tuple(symbols[i - order:i])
        bucket = counts.setdefault(ctx, {})
        sym = symbols[i]
        bucket[sym] = bucket.get(sym, 0) + 1
    table = {
        ctx: {sym: c / sum(nxt.values()) for sym, c in nxt.items()}
        for ctx, nxt in counts.items()
    }
    return NGramModel(
        order=order,
        table=table,
        vocabulary=frozenset(symbols),
        _counts=counts,
    )


@dataclass(frozen=True)
class SimConfig:
    """Generation limits: visible context, length cap, seed, end marker."""

    context_budget: Optional[int] = None  # None means unlimited
    max_len: int = 10000
    seed: int = 0
    eos_symbol: str = DEFAULT_EOS

    def __post_init__(self):
        if self.context_budget is not None and self.context_budget < 1:
            raise ValueError(f"context_budget must be >= 1, got {self.context_budget}")
        if self.max_len < 1:
            raise ValueError(f"max_len must be >= 1, got {self.max_len}")


@dataclass
class GenerationTrace:
    """One simulated decode: tokens, per-checkpoint sizes, and the outcome."""

    tokens: list[str]
    checkpoints: list[tuple[int, int]]
    stop_reason: str
    token_count: int


def _draw(dist: dict[str, int], rng: random.Random) -> str:
    total = sum(dist.values())
    x = rng.random() * total
    acc = 0.0
    items = sorted(dist.items())
    for sym, weight in items:
        acc += weight
        if x < acc:
            return sym
    return items[-1][0]


def generate(
    model: NGramModel,
    prompt: Sequence[str],
    sim: SimConfig,
    guard: Optional[GuardianConfig] = None,
    measure: Optional[GuardianConfig] = None,
) -> GenerationTrace:
    """Autoregressive sampling with a truncated conditioning context.

    With guard set, the stream monitor both records checkpoints and can stop
    the run; otherwise `measure` (default GuardianConfig()) fixes the
    checkpoint cadence and compressor geometry so paired runs stay
    comparable.  A context never seen in training ends the run (no backoff),
    as does a prompt shorter than the conditioning context.
    """
    prompt = list(prompt)
    if not prompt:
        raise ValueError("prompt must be non-empty")
    eff_ctx = model.order
    if sim.context_budget is not None:
        eff_ctx = min(model.order, sim.context_budget)
    counts = model.context_counts(eff_ctx)
    rng = random.Random(sim.seed)
    meter = guard if guard is not None else (measure or GuardianConfig())

    history = list(prompt)
    buffer = bytearray("".join(prompt).encode("utf-8"))
    state = guardian_init(bytes(buffer), meter) if guard is not None else None
    base_size = state.cur_compress if state else compressed_size(buffer, meter.compressor_config)
    checkpoints: list[tuple[int, int]] = [(len(buffer), base_size)]
    tokens: list[str] = []
    reason = REASON_CONTEXT

    while True:
        if len(tokens) >= sim.max_len:
            reason = REASON_CONTEXT
            break
        if len(history) < eff_ctx:
            reason = REASON_EOS
            break
        ctx = tuple(history[-eff_ctx:])
        dist = counts.get(ctx)
        if dist is None:
            reason = REASON_EOS
            break
        sym = _draw(dist, rng)
        if sym == sim.eos_symbol:
            reason = REASON_EOS
            break
        history.append(sym)
        tokens.append(sym)
        raw = sym.encode("utf-8")
        if state is not None:
            before = state.checkpoints_run
            decision = guardian_observe(state, raw)
            if state.checkpoints_run > before:
                checkpoints.append((len(state.buffer), state.cur_compress))
            if decision.should_stop:
                reason = REASON_PLATEAU
                break
        else:
            buffer += raw
            if len(tokens) % meter.check_freq == 0:
                checkpoints.append(
                    (len(buffer), compressed_size(buffer, meter.compressor_config))
                )

    return GenerationTrace(
        tokens=tokens,
        checkpoints=checkpoints,
        stop_reason=reason,
        token_count=len(tokens),
    )


def ratio_curve(trace: GenerationTrace) -> list[tuple[int, int, float]]:
    """Per-checkpoint (original_len, compressed_len, slope) with finite-difference slopes."""
    if len(trace.checkpoints) < 2:
        raise InsufficientDataError(
            f"need >= 2 checkpoints, trace has {len(trace.checkpoints)}"
        )
    out = []
    for (o0, c0), (o1, c1) in zip(trace.checkpoints, trace.checkpoints[1:]):
        out.append((o1, c1, (c1 - c0) / (o1 - o0)))
    return out


def jct(ttft: float, decode_len: float, tbt: float) -> float:
    """Job completion time: time to first token plus decode steps times per-token time."""
    if ttft < 0 or decode_len < 0 or tbt < 0:
        raise ValueError("jct arguments must be non-negative")
    return ttft + decode_len * tbt


def repetition_rate(tokens: Sequence[str], gram: int = 8) -> float:
    """Fraction of length-`gram` windows that repeat an earlier window."""
    if len(tokens) < gram:
        return 0.0
    seen: set[tuple[str, ...]] = set()
    repeats = 0
    total = 0
    for i in range(len(tokens) - gram + 1):
        window = tuple(tokens[i:i + gram])
        total += 1
        if window in seen:
            repeats += 1
        seen.add(window)
    return repeats / total


#: Campaign measurement geometry: checkpoint every 256 tokens against a
#: 20-byte threshold (ratio ~0.08), with a 4 KiB lookahead so that a pure
#: repetition orbit costs ~5 bytes per multi-checkpoint match instead of
#: ~5 bytes per 258-byte match (which would sit above the threshold for
#: multi-byte tokens).
def campaign_guard() -> GuardianConfig:
    from .lz77 import WindowConfig

    return GuardianConfig(
        check_freq=256,
        threshold=20,
        compressor_config=WindowConfig(window_len=32768 + 4096, lookahead_len=4096),
    )


@dataclass(frozen=True)
class PairedRun:
    """One seed's baseline, capped degraded, and guarded degraded traces."""

    seed: int
    budget: Optional[int]
    prompt_start: int
    baseline: GenerationTrace
    degraded: GenerationTrace
    guarded: GenerationTrace


@dataclass(frozen=True)
class CampaignSummary:
    budget: Optional[int]
    seeds: int
    mean_baseline: float
    mean_degraded: float
    inflation_pct: float
    mean_savings_pct: float


def _prompt_start(seed: int, n_tokens: int, prompt_len: int) -> int:
    # Spread prompts deterministically over the middle of the corpus so the
    # replay-to-end baselines vary by seed.
    span_lo = int(n_tokens * 0.30)
    span_hi = int(n_tokens * 0.60) - prompt_len
    offset = (seed * 2654435761) % max(1, span_hi - span_lo)
    return span_lo + offset


def paired_campaign(
    tokens: Sequence[str],
    order: int,
    budget: Optional[int],
    seeds: Sequence[int],
    max_len_factor: int = 3,
    prompt_len: int = 48,
    guard: Optional[GuardianConfig] = None,
) -> tuple[list[PairedRun], CampaignSummary]:
    """Run (baseline, degraded, guarded-degraded) triples across seeds.

    The baseline is an unlimited-budget, unguarded run; the degraded runs
    see only `budget` tokens of context and are capped at max_len_factor
    times the seed's baseline length.
    """
    from .guardian import savings

    model = train(tokens, order)
    guard = guard or campaign_guard()
    runs = []
    for seed in seeds:
        start = _prompt_start(seed, len(tokens), prompt_len)
        prompt = tokens[start:start + prompt_len]
        baseline = generate(
            model, prompt,
            SimConfig(context_budget=None, max_len=len(tokens) + 1000, seed=seed),
            measure=guard,
        )
        cap = max(1, max_len_factor * baseline.token_count)
        degraded = generate(
            model, prompt,
            SimConfig(context_budget=budget, max_len=cap, seed=seed),
            measure=guard,
        )
        guarded = generate(
            model, prompt,
            SimConfig(context_budget=budget, max_len=cap, seed=seed),
            guard=guard,
        )
        runs.append(PairedRun(seed, budget, start, baseline, degraded, guarded))

    mean_base = sum(r.baseline.token_count for r in runs) / len(runs)
    mean_deg = sum(r.degraded.token_count for r in runs) / len(runs)
    mean_sav = sum(
        savings(r.degraded.token_count, r.guarded.token_count) for r in runs
    ) / len(runs)
    summary = CampaignSummary(
        budget=budget,
        seeds=len(runs),
        mean_baseline=mean_base,
        mean_degraded=mean_deg,
        inflation_pct=100.0 * (mean_deg - mean_base) / mean_base,
        mean_savings_pct=mean_sav,
    )
    return runs, summary


def trace_rows(run_id: str, seed: int, budget: Optional[int], trace: GenerationTrace) -> list[dict]:
    """Flatten one trace into CSV rows (one per post-baseline checkpoint)."""
    rows = []
    for idx, (orig, comp, slope) in enumerate(ratio_curve(trace), start=1):
        rows.append(
            {
                "run_id": run_id,
                "seed": seed,
                "budget": "unlimited" if budget is None else budget,
                "checkpoint_index": idx,
                "original_len": orig,
                "compressed_len": comp,
                "slope": f"{slope:.6f}",
                "stop_reason": trace.stop_reason,
                "token_count": trace.token_count,
            }
        )
    return rows


def write_trace_csv(rows: list[dict], path) -> None:
    """Write flattened trace rows with the fixed column set."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=TRACE_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
