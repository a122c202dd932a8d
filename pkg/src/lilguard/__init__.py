"""Streaming information-gain monitoring for autoregressive token generators.

Tracks the growth of a sequence's LZ77-compressed size and stops generation
once the per-checkpoint growth falls below a byte threshold, i.e. once the
stream has stopped contributing new information.  Ships with the underlying
compressor, an entropy-bound toolkit for constrained sources, and a desk-scale
decode simulator that reproduces length inflation under context truncation.
"""

from .lz77 import (
    CompressedSeq,
    CompressionStats,
    Triple,
    WindowConfig,
    compress,
    compressed_size,
    compression_ratio,
    decompress,
    deserialize,
    encoded_size,
    serialize,
)
from .entropy import (
    BoundReport,
    ConstrainedSource,
    EntropyEstimate,
    enumerate_sigma,
    epsilon,
    per_symbol_entropy,
    recommended_window,
    verify_entropy_bound,
)
from .guardian import (
    GuardianConfig,
    GuardianState,
    StopDecision,
    Transcript,
    init,
    observe,
    run_generation,
    savings,
)
from .simulator import (
    GenerationTrace,
    NGramModel,
    SimConfig,
    generate,
    jct,
    ratio_curve,
    train,
)

__version__ = "0.1.0"
