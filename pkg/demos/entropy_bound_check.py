#!/usr/bin/env python3
"""Relate compression ratio to per-symbol entropy on constrained sources."""

from lilguard import entropy as en

# The golden-mean source: binary strings with no "11" substring.  Its
# length-k member counts follow the Fibonacci recurrence.
print("golden-mean member counts:")
for k in range(1, 11):
    print(f"  |sigma{{{k}}}| = {en.enumerate_sigma(en.GOLDEN_MEAN, k)}")

est = en.per_symbol_entropy(en.GOLDEN_MEAN, 8)
print(f"h(8) = log2({est.count})/8 = {est.h:.4f} bits/symbol")

# The error term shrinks as the lookahead grows.
for ls in (2, 4, 8, 16, 64, 256):
    print(f"epsilon(L_s={ls:3d}) = {en.epsilon(ls, 2):.4f}")

# Size the window from the source statistics, then check that the measured
# fixed-width compression ratio of sampled members stays within epsilon of
# the per-symbol entropy.
n = en.recommended_window(en.GOLDEN_MEAN, 8)
print(f"recommended window for L_s=8: n = {n} (messages of {n - 8} symbols)")

report = en.verify_entropy_bound(en.GOLDEN_MEAN, lookahead_len=8, samples=100, seed=123)
print(report.to_json())
print(f"rho in [{report.rho_min:.4f}, {report.rho_max:.4f}], "
      f"bound h + eps = {report.h + report.epsilon:.4f}, "
      f"holds: {report.upper_bound_holds}")
