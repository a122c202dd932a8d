"""Greedy sliding-window LZ77 over byte sequences.

Compressed output is a sequence of (offset, length, literal) triples: offset
is 0-indexed from the start of the search buffer, a match may run past the
search-buffer boundary into the data being encoded (overlap), and ties on
match length are broken toward the smallest offset.  The serialized
container's byte length is the package-wide "compressed size" measure.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels

MAGIC = b"LIL1"
VERSION = 1
HEADER_SIZE = 21  # magic + version u8 + window u32 + lookahead u32 + original_len u64
TRIPLE_WIDTH = 5  # offset u16 + length u16 + literal u8

_TRIPLE_DTYPE = np.dtype([("off", "<u2"), ("len", "<u2"), ("lit", "u1")])

#: Gzip-like production geometry: 32 KiB search buffer, 258-byte lookahead.
DEFAULT_SEARCH_LEN = 32768
DEFAULT_LOOKAHEAD_LEN = 258


class LZ77Error(ValueError):
    """Base class for compressor errors."""


class ConfigError(LZ77Error):
    """Window geometry violates its invariants."""


class SymbolError(LZ77Error):
    """Input contains a symbol outside the declared alphabet."""


class CorruptTripleError(LZ77Error):
    """A triple references data outside the reconstructed window."""


class ContainerFormatError(LZ77Error):
    """Serialized container is malformed or inconsistent."""


class UndefinedRatioError(LZ77Error):
    """Compression ratio requested for empty input."""


def _as_symbol(value) -> int:
    if isinstance(value, (bytes, bytearray)):
        if len(value) != 1:
            raise ConfigError(f"fill symbol must be a single byte, got {len(value)}")
        return value[0]
    if isinstance(value, str):
        raw = value.encode("utf-8")
        if len(raw) != 1:
            raise ConfigError(f"fill symbol must encode to a single byte: {value!r}")
        return raw[0]
    value = int(value)
    if not 0 <= value <= 255:
        raise ConfigError(f"fill symbol out of byte range: {value}")
    return value


@dataclass(frozen=True)
class WindowConfig:
    """Sliding-window geometry: total window and lookahead lengths in symbols.

    The search buffer is the remaining window_len - lookahead_len symbols.
    initial_fill optionally pre-populates the whole search buffer with one
    symbol; by default the buffer starts empty and grows with the input.
    """

    window_len: int = DEFAULT_SEARCH_LEN + DEFAULT_LOOKAHEAD_LEN
    lookahead_len: int = DEFAULT_LOOKAHEAD_LEN
    initial_fill: Optional[int] = None

    def __post_init__(self):
        if self.lookahead_len <= 0:
            raise ConfigError(f"lookahead_len must be positive, got {self.lookahead_len}")
        if not self.lookahead_len < self.window_len:
            raise ConfigError(
                f"need 0 < lookahead_len < window_len, got {self.lookahead_len} / {self.window_len}"
            )
        if self.initial_fill is not None:
            object.__setattr__(self, "initial_fill", _as_symbol(self.initial_fill))

    @property
    def search_len(self) -> int:
        return self.window_len - self.lookahead_len

    @property
    def max_match_len(self) -> int:
        # Match plus trailing literal fit inside the lookahead buffer.
        return self.lookahead_len - 1


class Triple(NamedTuple):
    """One codeword: match offset, match length, trailing literal byte."""

    offset: int
    length: int
    literal: int


@dataclass
class CompressedSeq:
    """Parse result: triple arrays plus the geometry that produced them."""

    config: WindowConfig
    original_len: int
    offsets: np.ndarray = field(repr=False)
    lengths: np.ndarray = field(repr=False)
    literals: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = len(self.offsets)
        if len(self.lengths) != n or len(self.literals) != n:
            raise CorruptTripleError("triple arrays disagree in length")
        if n:
            if int(self.offsets.min()) < 0 or int(self.offsets.max()) >= self.config.search_len:
                raise CorruptTripleError("offset outside the search buffer")
            if int(self.lengths.min()) < 0 or int(self.lengths.max()) > self.config.lookahead_len:
                raise CorruptTripleError("match length exceeds the lookahead buffer")
            if np.any((self.lengths == 0) & (self.offsets != 0)):
                raise CorruptTripleError("bare literal with nonzero offset")
        covered = int(self.lengths.sum()) + n
        if covered != self.original_len:
            raise CorruptTripleError(
                f"triples cover {covered} symbols, expected {self.original_len}"
            )

    @property
    def n_triples(self) -> int:
        return len(self.offsets)

    @property
    def triples(self) -> list[Triple]:
        return [
            Triple(int(o), int(l), int(c))
            for o, l, c in zip(self.offsets, self.lengths, self.literals)
        ]

    def __eq__(self, other):
        if not isinstance(other, CompressedSeq):
            return NotImplemented
        return (
            self.config == other.config
            and self.original_len == other.original_len
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.lengths, other.lengths)
            and np.array_equal(self.literals, other.literals)
        )


@dataclass(frozen=True)
class CompressionStats:
    """Serialized size in bytes and its ratio to the original byte length."""

    compressed_len: int
    ratio: float


def _stream_for(data: bytes, config: WindowConfig) -> tuple[np.ndarray, int]:
    if config.initial_fill is not None:
        prefix = bytes([config.initial_fill]) * config.search_len
        stream = np.frombuffer(prefix + data, dtype=np.uint8)
        return stream, config.search_len
    return np.frombuffer(data, dtype=np.uint8), 0


def compress(data, config: WindowConfig = WindowConfig(), alphabet=None) -> CompressedSeq:
    """Greedy longest-match parse of a byte sequence.

    alphabet, when given, is a collection of permitted byte values; any other
    input byte raises SymbolError.
    """
    data = bytes(data)
    if alphabet is not None:
        allowed = {_as_symbol(s) for s in alphabet}
        bad = set(data) - allowed
        if bad:
            raise SymbolError(f"symbols outside declared alphabet: {sorted(bad)}")
    stream, enc_start = _stream_for(data, config)
    out_off = np.empty(len(data), dtype=np.int64)
    out_len = np.empty(len(data), dtype=np.int64)
    out_lit = np.empty(len(data), dtype=np.uint8)
    n = _kernels.parse_greedy(
        stream, enc_start, config.search_len, config.max_match_len, out_off, out_len, out_lit
    )
    return CompressedSeq(
        config=config,
        original_len=len(data),
        offsets=out_off[:n].copy(),
        lengths=out_len[:n].copy(),
        literals=out_lit[:n].copy(),
    )


def decompress(seq: CompressedSeq) -> bytes:
    """Reconstruct the original byte sequence from a CompressedSeq."""
    config = seq.config
    if config.initial_fill is not None:
        enc_start = config.search_len
        out = np.full(enc_start + seq.original_len, config.initial_fill, dtype=np.uint8)
    else:
        enc_start = 0
        out = np.empty(seq.original_len, dtype=np.uint8)
    end = _kernels.rebuild(seq.offsets, seq.lengths, seq.literals, out, enc_start, config.search_len)
    if end < 0:
        raise CorruptTripleError(f"triple {-end - 1} references data outside the window")
    return out[enc_start:end].tobytes()


def _ceil_log(base: int, x: int) -> int:
    """Smallest e >= 0 with base**e >= x."""
    e = 0
    p = 1
    while p < x:
        p *= base
        e += 1
    return e


def codeword_len(config: WindowConfig, alphabet_size: int) -> int:
    """Fixed codeword width in alphabet symbols for the given geometry."""
    if alphabet_size < 2:
        raise ValueError(f"alphabet_size must be >= 2, got {alphabet_size}")
    return _ceil_log(alphabet_size, config.lookahead_len) + _ceil_log(alphabet_size, config.search_len) + 1


def encoded_size(seq: CompressedSeq, alphabet_size: int) -> int:
    """Fixed-width encoded length of the parse, in alphabet symbols."""
    if seq.n_triples == 0:
        return 0
    return seq.n_triples * codeword_len(seq.config, alphabet_size)


def serialize(seq: CompressedSeq) -> bytes:
    """Pack into the byte container (header + 5-byte triple records).

    The container does not record initial_fill, so round-tripping through
    deserialize preserves the parse but not a fill-based geometry.
    """
    config = seq.config
    if config.search_len > 0x10000 or config.lookahead_len > 0x10000:
        raise ContainerFormatError("geometry too large for u16 triple fields")
    if seq.n_triples and (int(seq.offsets.max()) > 0xFFFF or int(seq.lengths.max()) > 0xFFFF):
        raise ContainerFormatError("triple fields overflow u16")
    header = MAGIC + struct.pack(
        "<BIIQ", VERSION, config.window_len, config.lookahead_len, seq.original_len
    )
    rec = np.empty(seq.n_triples, dtype=_TRIPLE_DTYPE)
    rec["off"] = seq.offsets
    rec["len"] = seq.lengths
    rec["lit"] = seq.literals
    return header + rec.tobytes()


def deserialize(blob: bytes) -> CompressedSeq:
    """Parse a container produced by serialize."""
    blob = bytes(blob)
    if len(blob) < HEADER_SIZE:
        raise ContainerFormatError(f"truncated header: {len(blob)} bytes")
    if blob[:4] != MAGIC:
        raise ContainerFormatError(f"bad magic: {blob[:4]!r}")
    version, window_len, lookahead_len, original_len = struct.unpack(
        "<BIIQ", blob[4:HEADER_SIZE]
    )
    if version != VERSION:
        raise ContainerFormatError(f"unsupported version: {version}")
    payload = blob[HEADER_SIZE:]
    if len(payload) % TRIPLE_WIDTH:
        raise ContainerFormatError("truncated triple stream")
    try:
        config = WindowConfig(window_len=window_len, lookahead_len=lookahead_len)
    except ConfigError as exc:
        raise ContainerFormatError(f"invalid geometry in header: {exc}") from exc
    rec = np.frombuffer(payload, dtype=_TRIPLE_DTYPE)
    try:
        return CompressedSeq(
            config=config,
            original_len=original_len,
            offsets=rec["off"].astype(np.int64),
            lengths=rec["len"].astype(np.int64),
            literals=rec["lit"].copy(),
        )
    except CorruptTripleError as exc:
        raise ContainerFormatError(f"inconsistent container: {exc}") from exc


def compressed_size(data, config: WindowConfig = WindowConfig()) -> int:
    """Serialized container byte length for data under config."""
    return HEADER_SIZE + TRIPLE_WIDTH * compress(data, config).n_triples


def compression_ratio(data, config: WindowConfig = WindowConfig()) -> CompressionStats:
    """Serialized byte length divided by original byte length."""
    data = bytes(data)
    if not data:
        raise UndefinedRatioError("compression ratio undefined for empty input")
    size = len(serialize(compress(data, config)))
    return CompressionStats(compressed_len=size, ratio=size / len(data))
