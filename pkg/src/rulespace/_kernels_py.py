"""Pure-Python hot kernels.

These walk the shift dynamics on raw integers: a rule is its decimal value
(bit w of the value is the output for the input window of value w) and a
state is the window value with the oldest symbol in the most significant
bit.  One step is `s' = ((s << 1) & (2^mu - 1)) | ((value >> s) & 1)`.

The compiled extension ``rulespace._kernels`` mirrors this module function
for function; :mod:`rulespace.kernels` picks an implementation at import.
Unlike the compiled version, these functions accept rule values of any
size, so they also serve memory lengths whose tables exceed 64 bits.
"""

from __future__ import annotations

HIST_FIXED = 0
HIST_MAX = 1
HIST_MIN = 2


def is_debruijn(mu: int, value: int) -> bool:
    """True iff the state map is one cycle through all 2^mu states.

    A single cycle must pass through state 0, so one walk from 0 decides:
    the rule is de Bruijn iff the walk first returns to 0 after exactly
    2^mu steps.
    """
    n = 1 << mu
    mask = n - 1
    s = 0
    for step in range(1, n + 1):
        s = ((s << 1) & mask) | ((value >> s) & 1)
        if s == 0:
            return step == n
    return False


def orbit(mu: int, value: int, init: int) -> tuple[int, int]:
    """Walk from `init` until the first state revisit.

    Returns (transient_length, period).  Termination is guaranteed: a
    repeat occurs within 2^mu steps.
    """
    mask = (1 << mu) - 1
    seen = {}
    s = init
    i = 0
    while s not in seen:
        seen[s] = i
        i += 1
        s = ((s << 1) & mask) | ((value >> s) & 1)
    return seen[s], i - seen[s]


def debruijn_in_range(mu: int, lo: int, hi: int) -> list[int]:
    """All de Bruijn rule values in the decimal range [lo, hi)."""
    n = 1 << mu
    mask = n - 1
    out = []
    for value in range(lo, hi):
        s = 0
        for step in range(1, n + 1):
            s = ((s << 1) & mask) | ((value >> s) & 1)
            if s == 0:
                if step == n:
                    out.append(value)
                break
    return out


def _cycle_lengths(n: int, mask: int, value: int) -> list[int]:
    # one O(n) pass over the functional graph; vis: 0 white, 1 on path, 2 done
    vis = [0] * n
    per = [0] * n
    lengths = []
    for s0 in range(n):
        if vis[s0]:
            continue
        path = []
        s = s0
        while vis[s] == 0:
            vis[s] = 1
            path.append(s)
            s = ((s << 1) & mask) | ((value >> s) & 1)
        if vis[s] == 1:
            t = len(path) - path.index(s)
            lengths.append(t)
        else:
            t = per[s]
        for node in path:
            per[node] = t
            vis[node] = 2
    return lengths


def histogram_range(mu: int, lo: int, hi: int, mode: int, init: int) -> list[int]:
    """Tally one attractor period per rule over the decimal range [lo, hi).

    mode HIST_FIXED: period of the orbit from `init`.
    mode HIST_MAX / HIST_MIN: extremal cycle length of the state graph,
    which equals the extremal attractor period over all initial states.

    Returns counts indexed by period, length 2^mu + 1 (index 0 unused).
    """
    n = 1 << mu
    mask = n - 1
    counts = [0] * (n + 1)
    if mode == HIST_FIXED:
        for value in range(lo, hi):
            s = init
            i = 0
            seen = {}
            while s not in seen:
                seen[s] = i
                i += 1
                s = ((s << 1) & mask) | ((value >> s) & 1)
            counts[i - seen[s]] += 1
        return counts
    for value in range(lo, hi):
        lengths = _cycle_lengths(n, mask, value)
        t = max(lengths) if mode == HIST_MAX else min(lengths)
        counts[t] += 1
    return counts
