#!/usr/bin/env python3
"""Walk through the compressor: the textbook parse, round trips, ratios."""

import random

from lilguard import lz77 as lz

# A 16-symbol window split into an 8-symbol search buffer (pre-filled with
# zeros) and an 8-symbol lookahead reproduces the classic worked parse.
config = lz.WindowConfig(window_len=16, lookahead_len=8, initial_fill="0")
seq = lz.compress(b"0040040042304237", config)
print("input : 0040040042304237")
print("parse :", [(t.offset, t.length, chr(t.literal)) for t in seq.triples])
print("decode:", lz.decompress(seq).decode())

# Fixed-width rendering over a base-10 alphabet: 1 digit of offset, 1 digit
# of length, 1 literal per triple.
print("fixed-width symbols:", lz.encoded_size(seq, 10))
print("rendered           :", "".join(f"{t.offset}{t.length}{chr(t.literal)}" for t in seq.triples))

# The serialized container is what the stream monitor actually measures.
blob = lz.serialize(seq)
print(f"container: {len(blob)} bytes = {lz.HEADER_SIZE} header + {seq.n_triples} x {lz.TRIPLE_WIDTH}")

# Compression ratio orders inputs by redundancy.
rng = random.Random(7)
for label, data in [
    ("constant", b"A" * 10000),
    ("periodic", (bytes(range(65, 81)) * 625)),
    ("random  ", rng.randbytes(10000)),
]:
    stats = lz.compression_ratio(data)
    print(f"ratio {label}: {stats.ratio:.4f} ({stats.compressed_len} bytes)")

# Round trip at the production geometry (32 KiB search buffer, 258 lookahead).
data = rng.randbytes(100000)
assert lz.decompress(lz.compress(data)) == data
print("100 KB random round trip: ok")
