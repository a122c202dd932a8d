#!/usr/bin/env python3
"""Generate and validate the bundled simulator corpora.

Both corpora share one construction, chosen so the n-gram dynamics are fully
under control:

  * body: lines of tokens that are globally unique (random hex ids and
    counters), so conditioning on any window of the body is deterministic
    and a full-context walk replays the text verbatim;
  * closing block: a "recap" region whose first TAIL_LEN tokens are repeated
    verbatim at the very end of the corpus.  A walk whose context is shorter
    than the recap cannot tell the second copy from the first, so at the end
    of the text it continues from inside the recap and cycles it forever,
    while a walk with a longer context sees a window that occurs nowhere
    else and halts.

The trace corpus is a terse telemetry log (high byte entropy per line, used
by the statistical tests); the chronicle corpus is the same skeleton in
prose (used by the demos).  Output is deterministic; rerunning overwrites
the committed files with identical bytes.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "lilguard" / "data"

PERIOD_TOKENS = 80   # tokens in the recap block (the orbit period)
TAIL_LEN = 24        # tokens of the recap repeated at the corpus end
ORDER = 32           # full conditioning order the corpora are built for


def _hex_ids(rng: random.Random, count: int, width: int) -> list[str]:
    seen: set[str] = set()
    out = []
    while len(out) < count:
        h = "".join(rng.choice("0123456789abcdef") for _ in range(width))
        if h in seen:
            continue
        seen.add(h)
        out.append(h)
    return out


def build_trace(n_lines: int = 1480, seed: int = 20260809) -> str:
    rng = random.Random(seed)
    ids = _hex_ids(rng, 3 * n_lines, 6)
    lines = []
    for i in range(n_lines):
        x, y, z = ids[3 * i], ids[3 * i + 1], ids[3 * i + 2]
        lines.append(f"t{i:05d} x{x} y{y} z{z}\n")
    recap = _build_recap_tokens(
        rng, prefix_a="r", prefix_b="q", sep=" ", line_len=8
    )
    return "".join(lines) + "".join(recap) + "".join(recap[:TAIL_LEN])


def _build_recap_tokens(rng: random.Random, prefix_a: str, prefix_b: str,
                        sep: str, line_len: int) -> list[str]:
    """PERIOD_TOKENS distinct tokens laid out as short lines."""
    ids = _hex_ids(rng, PERIOD_TOKENS, 4)
    tokens = []
    for j in range(PERIOD_TOKENS):
        prefix = prefix_a if j % 2 == 0 else prefix_b
        trailing = "\n" if j % line_len == line_len - 1 else sep
        tokens.append(f"{prefix}{ids[j]}{trailing}")
    return tokens


_CHRONICLE_TEMPLATES = [
    "Day {d}: the clerk logged entry {x} and sealed ledger {y} at dusk.\n",
    "Day {d}: a courier filed record {x} beside docket {y} before noon.\n",
    "Day {d}: the warden stamped parcel {x} against manifest {y} after supper.\n",
    "Day {d}: an auditor checked receipt {x} under seal {y} by lamplight.\n",
    "Day {d}: the scribe copied folio {x} onto roll {y} near the gate.\n",
    "Day {d}: a steward weighed crate {x} with tally {y} past midnight.\n",
    "Day {d}: the keeper bound volume {x} behind index {y} through the rain.\n",
    "Day {d}: an envoy carried notice {x} toward archive {y} along the wall.\n",
]


def build_chronicle(n_entries: int = 560, seed: int = 19930404) -> str:
    rng = random.Random(seed)
    ids = _hex_ids(rng, 2 * n_entries, 6)
    entries = []
    for i in range(n_entries):
        template = _CHRONICLE_TEMPLATES[i % len(_CHRONICLE_TEMPLATES)]
        entries.append(
            template.format(d=f"{i + 1:04d}", x=f"e{ids[2 * i]}", y=f"g{ids[2 * i + 1]}")
        )
    recap = _build_recap_tokens(rng, prefix_a="u", prefix_b="w", sep=" ", line_len=8)
    return "".join(entries) + "The closing tally reads:\n" + "".join(recap) + "".join(recap[:TAIL_LEN])


def validate(text: str, name: str, widths: tuple[int, ...]) -> list[str]:
    """Check the properties the simulator tests rely on."""
    sys.path.insert(0, str(DATA_DIR.parent.parent))
    from lilguard.simulator import tokenize

    problems = []
    tokens = tokenize(text)
    if "".join(tokens) != text:
        problems.append("tokenization does not rejoin to the text")

    # The recap block and its tail copy.
    period = tokens[-(PERIOD_TOKENS + TAIL_LEN):-TAIL_LEN]
    tail = tokens[-TAIL_LEN:]
    if tail != period[:TAIL_LEN]:
        problems.append("tail is not a prefix copy of the recap block")
    if len(set(period)) != PERIOD_TOKENS:
        problems.append("recap tokens are not distinct")

    # Repeated context windows must agree on their successor at every
    # budget-sized width, or truncated-context walks would branch.
    for width in widths:
        succ: dict[tuple[str, ...], str] = {}
        for i in range(width, len(tokens)):
            key = tuple(tokens[i - width:i])
            nxt = tokens[i]
            if succ.setdefault(key, nxt) != nxt:
                problems.append(f"{name}: width-{width} window with two successors: {key!r}")
                break

    # The full-order closing window must be unique so a full-context walk halts.
    last = tuple(tokens[-ORDER:])
    occurrences = sum(
        1 for i in range(len(tokens) - ORDER + 1) if tuple(tokens[i:i + ORDER]) == last
    )
    if occurrences != 1:
        problems.append(f"{name}: closing window occurs {occurrences} times")

    return problems


# The trace corpus keeps truncated walks deterministic down to budget 1; the
# prose chronicle shares repeated template words, so only budgets >= 8 are
# deterministic there.
VALIDATED_WIDTHS = {
    "trace": (1, 2, 4, 8, 16, TAIL_LEN),
    "chronicle": (8, 16, TAIL_LEN),
}


def main() -> int:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    for name, builder in (("trace", build_trace), ("chronicle", build_chronicle)):
        text = builder()
        problems = validate(text, name, VALIDATED_WIDTHS[name])
        if problems:
            for p in problems:
                print(f"FAIL {name}: {p}", file=sys.stderr)
            return 1
        out = DATA_DIR / f"{name}_corpus.txt"
        out.write_text(text, encoding="utf-8")
        print(f"{name}: {len(text)} bytes, ok -> {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
