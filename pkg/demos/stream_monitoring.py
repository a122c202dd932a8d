#!/usr/bin/env python3
"""Drive the stream monitor by hand: checkpoints, deltas, and the stop."""

import random

from lilguard import guardian as gd

# A stream that keeps bringing new bytes never plateaus.
rng = random.Random(1)
state = gd.init(rng.randbytes(2000))
for step in range(1, 1001):
    decision = gd.observe(state, rng.randbytes(8))
    assert not decision.should_stop
print(f"random stream: {state.checkpoints_run} checkpoints, no stop, "
      f"compressed {state.cur_compress} bytes")

# A stream that degenerates into repetition trips the first checkpoint whose
# growth is under the threshold.
state = gd.init(rng.randbytes(2000))
for step in range(1, 10**6):
    decision = gd.observe(state, b"A")
    if decision.should_stop:
        print(f"repeating stream: stop at token {step}, "
              f"checkpoint delta {decision.checkpoint_delta} bytes < {state.config.threshold}")
        break

# The same rule as a full decode loop with an end marker and a context cap.
phrase = [b"so ", b"it ", b"goes ", b"on "]
counter = iter(range(10**9))
transcript = gd.run_generation(lambda: phrase[next(counter) % 4], b"Chapter one. ")
print(f"looping generator: {transcript.stop_reason} after {transcript.token_count} tokens, "
      f"saved vs a 4096-token cap: {gd.savings(4096, transcript.token_count):.1f}%")

# Threshold guidance: the byte threshold per check interval should sit
# between the plateau slope and the growth slope.
for freq, threshold in ((250, 20), (250, 3), (10, 20)):
    notes = gd.tuning_warnings(gd.GuardianConfig(check_freq=freq, threshold=threshold))
    print(f"f={freq} t={threshold}: {notes or 'ok'}")
