#!/usr/bin/env python3
"""Reproduce length inflation under context truncation, and what a monitor saves.

A generator that only sees its last few tokens cannot tell the closing recap
of the corpus from the earlier copy, so it re-enters it and cycles forever;
with the full context it replays to the end and halts.  The compressed-length
curve of the truncated run grows steeply, then flatlines at the orbit.
"""

import statistics

from lilguard import simulator as sm
from lilguard.guardian import savings
from lilguard.simulator import campaign_guard

tokens = sm.tokenize(sm.load_corpus("trace"))
print(f"corpus: {len(tokens)} tokens, {len(sm.load_corpus('trace'))} bytes")

model = sm.train(tokens, order=32)
prompt = tokens[2400:2448]
guard = campaign_guard()

baseline = sm.generate(model, prompt, sm.SimConfig(context_budget=None, max_len=10**5, seed=0),
                       measure=guard)
print(f"full context : {baseline.token_count} tokens, {baseline.stop_reason}")

cap = 3 * baseline.token_count
degraded = sm.generate(model, prompt, sm.SimConfig(context_budget=8, max_len=cap, seed=0),
                       measure=guard)
print(f"8-token budget: {degraded.token_count} tokens, {degraded.stop_reason} "
      f"(+{100 * (degraded.token_count - baseline.token_count) / baseline.token_count:.0f}%)")

guarded = sm.generate(model, prompt, sm.SimConfig(context_budget=8, max_len=cap, seed=0),
                      guard=guard)
print(f"with monitor  : {guarded.token_count} tokens, {guarded.stop_reason}, "
      f"savings {savings(degraded.token_count, guarded.token_count):.1f}%")

# The two-phase curve: steep growth while the walk still covers new corpus,
# near-zero slope once it orbits the recap.
print("checkpoint slopes (compressed bytes per raw byte):")
for original, compressed, slope in sm.ratio_curve(guarded):
    bar = "#" * int(slope * 40)
    print(f"  {original:7d} B -> {compressed:7d} B  slope {slope:6.3f} {bar}")

# A 20-seed campaign: inflation and savings in the mean.
runs, summary = sm.paired_campaign(tokens, order=32, budget=8, seeds=range(20))
sav = [savings(r.degraded.token_count, r.guarded.token_count) for r in runs]
print(f"20 seeds: inflation {summary.inflation_pct:.0f}%, "
      f"savings mean {statistics.mean(sav):.1f}% (min {min(sav):.1f}%, max {max(sav):.1f}%)")

# The end-to-end arithmetic that makes inflation costly: a faster per-token
# step does not pay for a longer stream.
base_jct = sm.jct(1.0, 1000, 0.030)
lil_jct = sm.jct(1.0, 2000, 0.024)
print(f"job completion: 1000 tokens at 30 ms = {base_jct:.1f}s, "
      f"2000 tokens at 24 ms = {lil_jct:.1f}s")
