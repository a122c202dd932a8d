"""Independent brute-force oracles the fast implementations are checked against.

Kept deliberately naive: direct rule-by-rule transcriptions with no shared
code or data structures with the package.
"""


def naive_parse(data: bytes, window_len: int, lookahead_len: int, initial_fill=None):
    """Greedy longest-match parse by scanning every window position.

    At each step every match start in the search buffer is tried (smallest
    offset first), matches may run past the buffer boundary into the data
    being encoded, a strictly longer match displaces the current best, and
    the match plus its trailing literal must fit in the lookahead buffer.
    """
    search_cap = window_len - lookahead_len
    max_match = lookahead_len - 1
    if initial_fill is not None:
        if isinstance(initial_fill, str):
            initial_fill = initial_fill.encode()[0]
        elif isinstance(initial_fill, (bytes, bytearray)):
            initial_fill = initial_fill[0]
        stream = bytes([initial_fill]) * search_cap + bytes(data)
        cursor = search_cap
    else:
        stream = bytes(data)
        cursor = 0
    out = []
    n = len(stream)
    while cursor < n:
        cap = min(max_match, n - cursor - 1)
        wstart = max(0, cursor - search_cap)
        best_len = 0
        best_pos = -1
        for j in range(wstart, cursor):
            length = 0
            while length < cap and stream[j + length] == stream[cursor + length]:
                length += 1
            if length > best_len:
                best_len = length
                best_pos = j
        if best_len > 0:
            out.append((best_pos - wstart, best_len, stream[cursor + best_len]))
        else:
            out.append((0, 0, stream[cursor]))
        cursor += best_len + 1
    return out


def brute_sigma_count(alphabet, forbidden, k: int) -> int:
    """Count constraint-satisfying strings by materializing all |A|^k candidates."""
    from itertools import product

    total = 0
    for combo in product(alphabet, repeat=k):
        text = "".join(combo)
        if not any(w in text for w in forbidden):
            total += 1
    return total
