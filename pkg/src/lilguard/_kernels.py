"""Numba kernels for the sliding-window parser and its inverse.

The parser is the hot path (the stream monitor recompresses its whole buffer
at every checkpoint), so match finding runs over flat uint8 arrays with
per-key FIFO hash chains.  Chains are walked oldest-first so that the first
maximal match found is also the smallest-offset one, which keeps the output
bit-identical to the naive longest-then-smallest-offset scan while allowing
an early exit once the length cap is reached.
"""

import numpy as np
from numba import njit

_HASH_BITS = 16
_HASH_MUL = 2654435761


@njit(cache=True)
def parse_greedy(stream, enc_start, search_cap, max_match, out_off, out_len, out_lit):
    """Greedy parse of stream[enc_start:]; returns the number of triples.

    Positions [0, enc_start) are pre-filled window content (match sources
    only).  Matches may start anywhere in the trailing search_cap positions
    before the cursor and may run past the cursor (overlap).  max_match is
    the longest emittable match (lookahead - 1, so the literal stays inside
    the lookahead).
    """
    n = stream.shape[0]

    t1_head = np.full(256, -1, np.int64)
    t1_tail = np.full(256, -1, np.int64)
    t1_next = np.full(n, -1, np.int64)
    t2_head = np.full(1 << 16, -1, np.int64)
    t2_tail = np.full(1 << 16, -1, np.int64)
    t2_next = np.full(n, -1, np.int64)
    t3_head = np.full(1 << _HASH_BITS, -1, np.int64)
    t3_tail = np.full(1 << _HASH_BITS, -1, np.int64)
    t3_next = np.full(n, -1, np.int64)

    # Seed the chains with the pre-filled window region.
    for j in range(enc_start):
        k1 = np.int64(stream[j])
        if t1_tail[k1] < 0:
            t1_head[k1] = j
        else:
            t1_next[t1_tail[k1]] = j
        t1_tail[k1] = j
        if j + 1 < n:
            k2 = (np.int64(stream[j]) << 8) | np.int64(stream[j + 1])
            if t2_tail[k2] < 0:
                t2_head[k2] = j
            else:
                t2_next[t2_tail[k2]] = j
            t2_tail[k2] = j
        if j + 2 < n:
            k24 = (np.int64(stream[j]) << 16) | (np.int64(stream[j + 1]) << 8) | np.int64(stream[j + 2])
            h = ((k24 * _HASH_MUL) & 0xFFFFFFFF) >> (32 - _HASH_BITS)
            if t3_tail[h] < 0:
                t3_head[h] = j
            else:
                t3_next[t3_tail[h]] = j
            t3_tail[h] = j

    n_out = 0
    c = enc_start
    while c < n:
        remaining = n - c
        cap = max_match
        if remaining - 1 < cap:
            cap = remaining - 1
        wstart = c - search_cap
        if wstart < 0:
            wstart = 0

        best_len = 0
        best_pos = -1

        if cap >= 3:
            k24 = (np.int64(stream[c]) << 16) | (np.int64(stream[c + 1]) << 8) | np.int64(stream[c + 2])
            h = ((k24 * _HASH_MUL) & 0xFFFFFFFF) >> (32 - _HASH_BITS)
            j = t3_head[h]
            while j != -1 and j < wstart:
                j = t3_next[j]
            t3_head[h] = j
            if j == -1:
                t3_tail[h] = -1
            while j != -1:
                if stream[j] == stream[c] and stream[j + 1] == stream[c + 1] and stream[j + 2] == stream[c + 2]:
                    l = 3
                    while l < cap and stream[j + l] == stream[c + l]:
                        l += 1
                    if l > best_len:
                        best_len = l
                        best_pos = j
                        if l == cap:
                            break
                j = t3_next[j]

        if best_len == 0 and cap >= 2:
            k2 = (np.int64(stream[c]) << 8) | np.int64(stream[c + 1])
            j = t2_head[k2]
            while j != -1 and j < wstart:
                j = t2_next[j]
            t2_head[k2] = j
            if j == -1:
                t2_tail[k2] = -1
            if j != -1:
                best_len = 2
                best_pos = j

        if best_len == 0 and cap >= 1:
            k1 = np.int64(stream[c])
            j = t1_head[k1]
            while j != -1 and j < wstart:
                j = t1_next[j]
            t1_head[k1] = j
            if j == -1:
                t1_tail[k1] = -1
            if j != -1:
                best_len = 1
                best_pos = j

        if best_len > 0:
            out_off[n_out] = best_pos - wstart
            out_len[n_out] = best_len
            out_lit[n_out] = stream[c + best_len]
        else:
            out_off[n_out] = 0
            out_len[n_out] = 0
            out_lit[n_out] = stream[c]
        n_out += 1

        stop = c + best_len + 1
        j = c
        while j < stop:
            k1 = np.int64(stream[j])
            if t1_tail[k1] < 0:
                t1_head[k1] = j
            else:
                t1_next[t1_tail[k1]] = j
            t1_tail[k1] = j
            if j + 1 < n:
                k2 = (np.int64(stream[j]) << 8) | np.int64(stream[j + 1])
                if t2_tail[k2] < 0:
                    t2_head[k2] = j
                else:
                    t2_next[t2_tail[k2]] = j
                t2_tail[k2] = j
            if j + 2 < n:
                k24 = (np.int64(stream[j]) << 16) | (np.int64(stream[j + 1]) << 8) | np.int64(stream[j + 2])
                h = ((k24 * _HASH_MUL) & 0xFFFFFFFF) >> (32 - _HASH_BITS)
                if t3_tail[h] < 0:
                    t3_head[h] = j
                else:
                    t3_next[t3_tail[h]] = j
                t3_tail[h] = j
            j += 1
        c = stop

    return n_out


@njit(cache=True)
def rebuild(offsets, lengths, literals, out, enc_start, search_cap):
    """Inverse of parse_greedy.  out[0:enc_start] holds the window pre-fill.

    Returns the final cursor, or -(t + 1) if triple t references a source
    position at or past the cursor (outside the reconstructed window).
    """
    c = enc_start
    for t in range(offsets.shape[0]):
        l = np.int64(lengths[t])
        wstart = c - search_cap
        if wstart < 0:
            wstart = 0
        if l > 0:
            src = wstart + np.int64(offsets[t])
            if src >= c:
                return -(t + 1)
            for k in range(l):
                out[c + k] = out[src + k]
        elif offsets[t] != 0:
            return -(t + 1)
        out[c + l] = literals[t]
        c += l + 1
    return c
