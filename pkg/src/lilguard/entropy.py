"""Per-symbol entropy of constrained sources and the compression-ratio bound.

A constrained source is the set of strings over a finite alphabet that avoid
a fixed collection of forbidden substrings.  Counting its length-k members
gives the per-symbol entropy h(k); compressing sampled members with a window
sized by recommended_window keeps the fixed-width compression ratio within
epsilon of h.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .lz77 import WindowConfig, codeword_len, compress

ENUMERATION_GUARD = 2**24
SAMPLING_BUDGET = 10**6


class EnumerationTooLargeError(ValueError):
    """|A|**k exceeds the desk-scale enumeration guard."""


class EmptySigmaError(ValueError):
    """No length-k strings survive the forbidden-substring constraints."""


class SamplingError(RuntimeError):
    """Rejection sampling exhausted its attempt budget."""


@dataclass(frozen=True)
class ConstrainedSource:
    """Finite-alphabet source whose members avoid the forbidden substrings."""

    alphabet: tuple[str, ...]
    forbidden: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        if len(self.alphabet) < 2:
            raise ValueError(f"alphabet must have >= 2 symbols, got {len(self.alphabet)}")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be distinct")
        for sym in self.alphabet:
            if len(sym) != 1:
                raise ValueError(f"alphabet symbols must be single characters: {sym!r}")
        for word in self.forbidden:
            if not word:
                raise ValueError("forbidden strings must be non-empty")
            if not set(word) <= set(self.alphabet):
                raise ValueError(f"forbidden string {word!r} uses symbols outside the alphabet")

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def describe(self) -> str:
        alpha = "".join(self.alphabet)
        if not self.forbidden:
            return f"alphabet={alpha!r} unconstrained"
        banned = ",".join(sorted(self.forbidden))
        return f"alphabet={alpha!r} forbidden=[{banned}]"

    def _max_forbidden_len(self) -> int:
        return max((len(w) for w in self.forbidden), default=0)

    def violates(self, text: str) -> bool:
        """True if text contains any forbidden substring."""
        return any(w in text for w in self.forbidden)

    def _suffix_ok(self, text: str) -> bool:
        # Appending a symbol can only create a violation ending at the last char.
        m = self._max_forbidden_len()
        tail = text[-m:] if m else ""
        return not any(tail.endswith(w) for w in self.forbidden)


GOLDEN_MEAN = ConstrainedSource(alphabet=("0", "1"), forbidden=frozenset({"11"}))
UNCONSTRAINED_BINARY = ConstrainedSource(alphabet=("0", "1"))


@dataclass(frozen=True)
class EntropyEstimate:
    """Member count of sigma{k} and the per-symbol entropy in base-|A| units."""

    k: int
    count: int
    h: float


def _check_guard(source: ConstrainedSource, k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if source.size**k > ENUMERATION_GUARD:
        raise EnumerationTooLargeError(
            f"|A|^k = {source.size}^{k} exceeds the enumeration guard 2^24"
        )


def enumerate_sigma(source: ConstrainedSource, k: int) -> int:
    """Exact count of length-k strings avoiding every forbidden substring.

    Depth-first extension with pruning on the new suffix; each surviving
    string is constructed once.
    """
    _check_guard(source, k)
    m = source._max_forbidden_len()

    def grow(prefix: str, depth: int) -> int:
        if depth == k:
            return 1
        total = 0
        tail = prefix[-(m - 1):] if m > 1 else ""
        for sym in source.alphabet:
            candidate = tail + sym
            if any(candidate.endswith(w) for w in source.forbidden):
                continue
            total += grow(prefix + sym, depth + 1)
        return total

    return grow("", 0)


def sigma_members(source: ConstrainedSource, k: int) -> list[str]:
    """All length-k members, in lexicographic alphabet order."""
    _check_guard(source, k)
    m = source._max_forbidden_len()
    out: list[str] = []

    def grow(prefix: str, depth: int) -> None:
        if depth == k:
            out.append(prefix)
            return
        tail = prefix[-(m - 1):] if m > 1 else ""
        for sym in source.alphabet:
            if any((tail + sym).endswith(w) for w in source.forbidden):
                continue
            grow(prefix + sym, depth + 1)

    grow("", 0)
    return out


def extension_closed(source: ConstrainedSource, k: int) -> bool:
    """True if every length-k member extends to at least one length-(k+1) member."""
    for member in sigma_members(source, k):
        if not any(source._suffix_ok(member + sym) for sym in source.alphabet):
            return False
    return True


def per_symbol_entropy(source: ConstrainedSource, k: int) -> EntropyEstimate:
    """h(k) = log_|A| |sigma{k}| / k."""
    count = enumerate_sigma(source, k)
    if count == 0:
        raise EmptySigmaError(f"sigma{{{k}}} is empty for {source.describe()}")
    h = math.log(count, source.size) / k
    return EntropyEstimate(k=k, count=count, h=h)


def epsilon(lookahead_len: int, alphabet_size: int) -> float:
    """Error term of the ratio bound, logarithms taken base alphabet_size."""
    if lookahead_len < 2:
        raise ValueError(f"lookahead_len must be >= 2, got {lookahead_len}")
    if alphabet_size < 2:
        raise ValueError(f"alphabet_size must be >= 2, got {alphabet_size}")
    ls = lookahead_len
    return (
        3.0 + 3.0 * math.log(ls - 1, alphabet_size) + math.log(ls / 2.0, alphabet_size)
    ) / (ls - 1)


def _ceil_log(base: int, x: int) -> int:
    e = 0
    p = 1
    while p < x:
        p *= base
        e += 1
    return e


def recommended_window(source: ConstrainedSource, lookahead_len: int) -> int:
    """Window length making the sized parse-count argument go through.

    Evaluates, with l = lookahead_len - 1 and lam = ceil(log_|A| |sigma{l}|):

        n = sum_{m=1..lam} m |A|^m + sum_{m=1..lam} m |sigma{m}|
            + (l + 1) (sum_{m=1..lam} (l - m) |A|^m
                       + sum_{m=1..lam} (l - m) |sigma{m}| + 1)
    """
    if lookahead_len < 2:
        raise ValueError(f"lookahead_len must be >= 2, got {lookahead_len}")
    l = lookahead_len - 1
    sig_l = enumerate_sigma(source, l)
    if sig_l == 0:
        raise EmptySigmaError(f"sigma{{{l}}} is empty for {source.describe()}")
    lam = _ceil_log(source.size, sig_l)
    counts = {m: enumerate_sigma(source, m) for m in range(1, lam + 1)}
    a = source.size
    s_weighted = sum(m * a**m for m in range(1, lam + 1))
    s_weighted += sum(m * counts[m] for m in range(1, lam + 1))
    s_rest = sum((l - m) * a**m for m in range(1, lam + 1))
    s_rest += sum((l - m) * counts[m] for m in range(1, lam + 1))
    n = s_weighted + (l + 1) * (s_rest + 1)
    if n <= lookahead_len:
        raise ValueError(f"degenerate source: computed window {n} <= lookahead {lookahead_len}")
    return n


def sample_member(source: ConstrainedSource, length: int, rng: random.Random,
                  budget: int = SAMPLING_BUDGET) -> str:
    """Draw one length-`length` member by symbol-wise rejection.

    Each position proposes uniform symbols until one keeps the string legal;
    a dead end (no legal extension) restarts the string.  Proposals count
    against the budget.
    """
    m = source._max_forbidden_len()
    forbidden = tuple(source.forbidden)

    def extends_ok(tail: str, sym: str) -> bool:
        piece = tail + sym
        return not any(piece.endswith(w) for w in forbidden)

    attempts = 0
    while True:
        chars: list[str] = []
        tail = ""
        dead = False
        for _ in range(length):
            if not any(extends_ok(tail, s) for s in source.alphabet):
                attempts += 1
                dead = True
                break
            while True:
                attempts += 1
                if attempts > budget:
                    raise SamplingError(
                        f"no length-{length} member found within {budget} proposals"
                    )
                sym = source.alphabet[rng.randrange(source.size)]
                if extends_ok(tail, sym):
                    chars.append(sym)
                    tail = (tail + sym)[-(m - 1):] if m > 1 else ""
                    break
        if not dead:
            return "".join(chars)


@dataclass(frozen=True)
class BoundReport:
    """Measured compression ratios of sampled members against h + epsilon."""

    source: str
    alphabet_size: int
    lookahead_len: int
    n: int
    h: float
    epsilon: float
    rho_min: float
    rho_mean: float
    rho_max: float
    upper_bound_holds: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "source": self.source,
                "alphabet_size": self.alphabet_size,
                "lookahead_len": self.lookahead_len,
                "n": self.n,
                "h": self.h,
                "epsilon": self.epsilon,
                "rho_min": self.rho_min,
                "rho_mean": self.rho_mean,
                "rho_max": self.rho_max,
                "upper_bound_holds": self.upper_bound_holds,
            }
        )


def member_ratio(source: ConstrainedSource, text: str, config: WindowConfig) -> float:
    """Fixed-width compression ratio L_c * N / len(text) of one member string."""
    data = text.encode("ascii")
    seq = compress(data, config, alphabet=[s.encode("ascii")[0] for s in source.alphabet])
    return codeword_len(config, source.size) * seq.n_triples / len(text)


def verify_entropy_bound(source: ConstrainedSource, lookahead_len: int,
                         samples: int, seed: int) -> BoundReport:
    """Sample members of length n - L_s and test max ratio <= h(L_s-1) + eps(L_s).

    The lower bound h <= rho is reported through rho_min but not asserted:
    individual low-entropy members may compress below the source entropy.
    """
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    n = recommended_window(source, lookahead_len)
    msg_len = n - lookahead_len
    h = per_symbol_entropy(source, lookahead_len - 1).h
    eps = epsilon(lookahead_len, source.size)
    config = WindowConfig(window_len=n, lookahead_len=lookahead_len)
    rng = random.Random(seed)
    ratios = [
        member_ratio(source, sample_member(source, msg_len, rng), config)
        for _ in range(samples)
    ]
    rho_max = max(ratios)
    return BoundReport(
        source=source.describe(),
        alphabet_size=source.size,
        lookahead_len=lookahead_len,
        n=n,
        h=h,
        epsilon=eps,
        rho_min=min(ratios),
        rho_mean=sum(ratios) / len(ratios),
        rho_max=rho_max,
        upper_bound_holds=rho_max <= h + eps,
    )
