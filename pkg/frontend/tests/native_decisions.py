#!/usr/bin/env python3
"""Print the in-process stop decision (0/1) for each JSON-framed token on stdin.

Equivalence oracle for the subprocess binding: drives the library API
directly with the same stream and parameters.

Usage: native_decisions.py FREQ THRESHOLD [PREFILL_FILE]
"""

import json
import sys

from lilguard import guardian


def main() -> int:
    freq = int(sys.argv[1])
    threshold = int(sys.argv[2])
    prefill = b""
    if len(sys.argv) > 3 and sys.argv[3]:
        with open(sys.argv[3], "rb") as fh:
            prefill = fh.read()
    config = guardian.GuardianConfig(check_freq=freq, threshold=threshold)
    state = guardian.init(prefill, config)
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        token = json.loads(line)
        decision = guardian.observe(state, token.encode("utf-8"))
        print("1" if decision.should_stop else "0")
        if decision.should_stop:
            break
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
