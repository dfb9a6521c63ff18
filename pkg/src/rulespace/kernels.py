"""Kernel dispatch: compiled extension when available, pure Python otherwise.

The compiled kernels handle rule tables of at most 64 bits (mu <= 6); wider
tables always go through the pure implementation, which works on unbounded
integers.  Set the environment variable ``RULESPACE_PURE=1`` before import
to force the pure path everywhere (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py as _pure
from ._kernels_py import HIST_FIXED, HIST_MAX, HIST_MIN

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

if os.environ.get("RULESPACE_PURE"):
    _compiled = None

COMPILED = _compiled is not None
COMPILED_MU_MAX = 6  # 2^6-entry tables are the widest that fit a 64-bit word


def _impl(mu: int):
    if _compiled is not None and mu <= COMPILED_MU_MAX:
        return _compiled
    return _pure


def is_debruijn(mu: int, value: int) -> bool:
    return _impl(mu).is_debruijn(mu, value)


def orbit(mu: int, value: int, init: int) -> tuple[int, int]:
    return _impl(mu).orbit(mu, value, init)


def debruijn_in_range(mu: int, lo: int, hi: int) -> list[int]:
    return _impl(mu).debruijn_in_range(mu, lo, hi)


def histogram_range(mu: int, lo: int, hi: int, mode: int, init: int) -> list[int]:
    return _impl(mu).histogram_range(mu, lo, hi, mode, init)
