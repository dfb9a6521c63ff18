# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels, mirroring rulespace._kernels_py.

Rule values must fit in 64 bits, so these cover memory lengths mu <= 6;
the dispatcher in rulespace.kernels routes larger mu to the pure-Python
implementation.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

HIST_FIXED = 0
HIST_MAX = 1
HIST_MIN = 2


cdef inline uint64_t _step(uint64_t s, uint64_t value, uint64_t mask) nogil:
    return ((s << 1) & mask) | ((value >> s) & 1)


cdef inline int _cycle_len_from_zero(int n, uint64_t mask, uint64_t value) nogil:
    # steps until the walk from state 0 first returns to 0, capped at n; 0 if no return
    cdef uint64_t s = 0
    cdef int step
    for step in range(1, n + 1):
        s = _step(s, value, mask)
        if s == 0:
            return step
    return 0


def is_debruijn(int mu, uint64_t value):
    """True iff the state map is one cycle through all 2^mu states."""
    cdef int n = 1 << mu
    return _cycle_len_from_zero(n, <uint64_t> (n - 1), value) == n


def orbit(int mu, uint64_t value, uint64_t init):
    """(transient_length, period) of the walk from `init`."""
    cdef int n = 1 << mu
    cdef uint64_t mask = <uint64_t> (n - 1)
    cdef int64_t *order = <int64_t *> malloc(n * sizeof(int64_t))
    if order == NULL:
        raise MemoryError()
    cdef int i
    cdef uint64_t s = init
    cdef int first
    try:
        for i in range(n):
            order[i] = -1
        i = 0
        while order[s] < 0:
            order[s] = i
            i += 1
            s = _step(s, value, mask)
        first = <int> order[s]
        return first, i - first
    finally:
        free(order)


def debruijn_in_range(int mu, uint64_t lo, uint64_t hi):
    """All de Bruijn rule values in the decimal range [lo, hi)."""
    cdef int n = 1 << mu
    cdef uint64_t mask = <uint64_t> (n - 1)
    cdef uint64_t value
    out = []
    for value in range(lo, hi):
        if _cycle_len_from_zero(n, mask, value) == n:
            out.append(value)
    return out


def histogram_range(int mu, uint64_t lo, uint64_t hi, int mode, uint64_t init):
    """Tally one attractor period per rule over the decimal range [lo, hi)."""
    cdef int n = 1 << mu
    cdef uint64_t mask = <uint64_t> (n - 1)
    cdef int64_t *counts = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int64_t *order = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t *path = <int64_t *> malloc(n * sizeof(int64_t))
    if counts == NULL or order == NULL or path == NULL:
        free(counts); free(order); free(path)
        raise MemoryError()
    cdef uint64_t value, s
    cdef int i, j, k, plen, t, best, s0
    try:
        for i in range(n + 1):
            counts[i] = 0
        if mode == HIST_FIXED:
            for value in range(lo, hi):
                for i in range(n):
                    order[i] = -1
                s = init
                i = 0
                while order[s] < 0:
                    order[s] = i
                    i += 1
                    s = _step(s, value, mask)
                counts[i - order[s]] += 1
        else:
            for value in range(lo, hi):
                # vis coding inside order[]: -1 white, -2 on path, >=0 done with that period
                for i in range(n):
                    order[i] = -1
                best = -1
                for s0 in range(n):
                    if order[s0] != -1:
                        continue
                    plen = 0
                    s = <uint64_t> s0
                    while order[s] == -1:
                        order[s] = -2
                        path[plen] = <int64_t> s
                        plen += 1
                        s = _step(s, value, mask)
                    if order[s] == -2:
                        # new cycle: locate s on the path
                        j = 0
                        while path[j] != <int64_t> s:
                            j += 1
                        t = plen - j
                        if best < 0:
                            best = t
                        elif mode == HIST_MAX:
                            if t > best:
                                best = t
                        elif t < best:
                            best = t
                    else:
                        t = <int> order[s]
                    for k in range(plen):
                        order[path[k]] = t
                counts[best] += 1
        return [counts[i] for i in range(n + 1)]
    finally:
        free(counts); free(order); free(path)
