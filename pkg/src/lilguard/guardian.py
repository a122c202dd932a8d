"""Early-stopping state machine over compressed-length deltas.

Every check_freq observed tokens the full buffer (prefill plus generated
text) is recompressed from scratch; if the serialized size grew by fewer
than threshold bytes since the previous checkpoint, the stream has stopped
gaining information and a stop is signalled.  A state is single-writer:
observations must arrive in token order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .lz77 import WindowConfig, compressed_size

REASON_PLATEAU = "information_plateau"
REASON_EOS = "end_of_sequence"
REASON_CONTEXT = "context_limit"

#: Slope band separating the growth stage from the plateau stage; the
#: threshold-to-frequency ratio should sit between these.
PLATEAU_SLOPE = 0.02
GROWTH_SLOPE = 1.0
RECOMMENDED_RATIO = 0.08

DEFAULT_CHECK_FREQ = 250
DEFAULT_THRESHOLD = 20
DEFAULT_MAX_CONTEXT = 131072


class StateFinalizedError(RuntimeError):
    """observe() called after a stop decision."""


@dataclass(frozen=True)
class GuardianConfig:
    check_freq: int = DEFAULT_CHECK_FREQ
    threshold: int = DEFAULT_THRESHOLD
    max_context: int = DEFAULT_MAX_CONTEXT
    compressor_config: WindowConfig = field(default_factory=WindowConfig)

    def __post_init__(self):
        if self.check_freq < 1:
            raise ValueError(f"check_freq must be >= 1, got {self.check_freq}")
        if self.threshold < 1:
            raise ValueError(f"threshold must be >= 1, got {self.threshold}")
        if self.max_context < 1:
            raise ValueError(f"max_context must be >= 1, got {self.max_context}")


def tuning_warnings(config: GuardianConfig) -> list[str]:
    """Advisory checks of threshold/check_freq against the slope band.

    The stop test compares threshold bytes against check_freq tokens of
    growth, so their ratio should land between the plateau slope (~0.02)
    and the initial growth slope (>1); about 0.08 works well.
    """
    ratio = config.threshold / config.check_freq
    warnings = []
    if not 0.0 < ratio < 1.0:
        warnings.append(
            f"threshold/check_freq = {ratio:.3f} outside (0, 1); "
            "growth-stage streams may be cut off"
        )
    elif ratio <= PLATEAU_SLOPE:
        warnings.append(
            f"threshold/check_freq = {ratio:.3f} <= plateau slope {PLATEAU_SLOPE}; "
            "plateaus may never trigger a stop"
        )
    return warnings


@dataclass
class GuardianState:
    """Running state: buffer, step counter, and checkpoint byte counts."""

    config: GuardianConfig
    buffer: bytearray
    cnt: int = 1
    last_compress: int = 0
    cur_compress: int = 0
    token_count: int = 0
    checkpoints_run: int = 0
    finalized: bool = False


@dataclass(frozen=True)
class StopDecision:
    kind: str  # "continue" | "stop"
    reason: Optional[str] = None
    checkpoint_delta: Optional[int] = None

    @property
    def should_stop(self) -> bool:
        return self.kind == "stop"


_CONTINUE = StopDecision(kind="continue")


def init(prefill: bytes, config: GuardianConfig = GuardianConfig()) -> GuardianState:
    """Compress the prefill once and start the step counter at 1."""
    size = compressed_size(prefill, config.compressor_config)
    return GuardianState(
        config=config,
        buffer=bytearray(prefill),
        cnt=1,
        last_compress=size,
        cur_compress=size,
    )


def observe(state: GuardianState, token_text: bytes) -> StopDecision:
    """Append one token's text and run the checkpoint bookkeeping.

    Every check_freq-th call recompresses the full buffer; a growth of fewer
    than threshold bytes since the last checkpoint stops the stream.  The
    step counter advances once per call on every path.
    """
    if state.finalized:
        raise StateFinalizedError("observe() after a stop decision")
    state.buffer += token_text
    state.token_count += 1
    decision = _CONTINUE
    if state.cnt % state.config.check_freq == 0:
        cur = compressed_size(state.buffer, state.config.compressor_config)
        assert cur >= state.last_compress, "compressed size shrank on a growing buffer"
        state.cur_compress = cur
        state.checkpoints_run += 1
        delta = cur - state.last_compress
        if delta < state.config.threshold:
            state.finalized = True
            decision = StopDecision(kind="stop", reason=REASON_PLATEAU, checkpoint_delta=delta)
        else:
            state.last_compress = cur
    state.cnt += 1
    return decision


@dataclass(frozen=True)
class Transcript:
    """Outcome of a generation loop: final buffer, stop reason, token count."""

    buffer: bytes
    stop_reason: str
    token_count: int


def run_generation(
    next_token: Callable[[], Optional[bytes]],
    prefill: bytes,
    config: GuardianConfig = GuardianConfig(),
    prefill_tokens: int = 0,
) -> Transcript:
    """Drive the full decode loop against a token supplier.

    next_token returns the next token's text, or None as the end marker.
    The loop stops on the end marker, on the context limit (prefill_tokens
    plus generated tokens reaching max_context, checked before appending),
    or on an information plateau; a token accepted in the same step a
    checkpoint fires stays in the transcript.
    """
    state = init(prefill, config)
    while True:
        token = next_token()
        if token is None:
            return Transcript(bytes(state.buffer), REASON_EOS, state.token_count)
        if prefill_tokens + state.token_count >= config.max_context:
            return Transcript(bytes(state.buffer), REASON_CONTEXT, state.token_count)
        decision = observe(state, token)
        if decision.should_stop:
            return Transcript(bytes(state.buffer), decision.reason, state.token_count)


def savings(baseline_tokens: int, guarded_tokens: int) -> float:
    """Token savings percentage of a guarded run against its baseline."""
    if baseline_tokens == 0:
        raise ValueError("savings undefined for a zero-token baseline")
    return 100.0 * (baseline_tokens - guarded_tokens) / baseline_tokens
