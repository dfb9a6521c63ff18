"""Exhaustive statistics over rule spaces: period histograms and reduction ratios.

The period histogram assigns one period per rule, under a configurable
initial-condition policy, and tallies over the whole 2^(2^mu) rule space.
The policy matters: different initial windows can fall into different
cycles of the same rule.  No deterministic policy reproduces the published
mu = 4 table exactly (the evidence points to one random initial window
per rule); fixed(1) is the closest of the calibration candidates and is
the shipped default.  See ``calibrate_policies`` and the README notes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from decimal import Decimal, localcontext
from multiprocessing import Pool
from typing import Iterable, Mapping, Sequence, Union

from .errors import CapacityError, RangeError
from .rulecore import check_mu
from .debruijn import debruijn_count
from .feasibility import count_feasible
from . import kernels

#: Initial-condition policy: "max", "min", or an int fixed initial window.
Policy = Union[str, int]

#: Calibration-selected default: fixed initial window 00..01.
DEFAULT_POLICY: Policy = 1

#: Full histograms are guarded here (mu = 5 would mean 2^32 rules).
HISTOGRAM_GUARD_MU = 4


@dataclass(frozen=True)
class PeriodHistogram:
    """Rule counts per attractor period under one init policy."""

    mu: int
    policy: str
    counts: Mapping[int, int]

    def total(self) -> int:
        return sum(self.counts.values())


def _normalize_policy(mu: int, policy: Policy) -> tuple[int, int, str]:
    if policy == "max":
        return kernels.HIST_MAX, 0, "max"
    if policy == "min":
        return kernels.HIST_MIN, 0, "min"
    if isinstance(policy, int) and not isinstance(policy, bool):
        if not 0 <= policy < (1 << mu):
            raise RangeError(f"fixed init {policy} out of range for mu={mu}")
        return kernels.HIST_FIXED, policy, f"fixed:{policy}"
    raise RangeError(f"unknown init policy {policy!r}")


def _histogram_chunk(args: tuple[int, int, int, int, int]) -> list[int]:
    mu, lo, hi, mode, init = args
    return kernels.histogram_range(mu, lo, hi, mode, init)


def default_workers() -> int:
    """Worker count from RULESPACE_WORKERS, else 1."""
    try:
        return max(1, int(os.environ.get("RULESPACE_WORKERS", "1")))
    except ValueError:
        return 1


def period_histogram(
    mu: int,
    policy: Policy = DEFAULT_POLICY,
    *,
    workers: int = 1,
    force: bool = False,
) -> PeriodHistogram:
    """One period per rule over the whole rule space, tallied by period.

    Worker partitions split the rule range; the partial tallies merge by
    pointwise addition, so the result is independent of ``workers``.
    """
    check_mu(mu)
    if mu > HISTOGRAM_GUARD_MU and not force:
        raise CapacityError(
            f"period_histogram(mu={mu}) scans 2^{1 << mu} rules; "
            "pass force=True if you mean it"
        )
    mode, init, label = _normalize_policy(mu, policy)
    total = 1 << (1 << mu)
    if workers <= 1:
        merged = kernels.histogram_range(mu, 0, total, mode, init)
    else:
        step = -(-total // workers)
        chunks = [
            (mu, lo, min(lo + step, total), mode, init)
            for lo in range(0, total, step)
        ]
        merged = [0] * ((1 << mu) + 1)
        with Pool(processes=workers) as pool:
            for part in pool.map(_histogram_chunk, chunks):
                for i, c in enumerate(part):
                    merged[i] += c
    counts = {t: merged[t] for t in range(1, (1 << mu) + 1)}
    return PeriodHistogram(mu, label, counts)


def histogram_csv(hist: PeriodHistogram) -> str:
    lines = ["period,count"]
    lines += [f"{t},{hist.counts.get(t, 0)}" for t in sorted(hist.counts)]
    return "\n".join(lines) + "\n"


def histogram_chart(hist: PeriodHistogram, width: int = 60) -> str:
    """Plain-text bar chart of the histogram."""
    peak = max(hist.counts.values()) or 1
    lines = []
    for t in sorted(hist.counts):
        c = hist.counts[t]
        bar = "#" * max(1 if c else 0, round(c * width / peak))
        lines.append(f"{t:>6} | {bar} {c}")
    return "\n".join(lines) + "\n"


def sci(num: int, den: int, digits: int = 5) -> str:
    """num/den in scientific notation with ``digits`` significant digits.

    Exact integer arithmetic via Decimal, so arbitrarily large rule counts
    render without overflow.
    """
    if den == 0:
        raise RangeError("ratio denominator is zero")
    with localcontext() as ctx:
        ctx.prec = digits + 15
        d = Decimal(num) / Decimal(den)
    return f"{d:.{digits - 1}E}"


@dataclass(frozen=True)
class ReductionRow:
    """Exact counts plus rendered ratios for one memory length."""

    mu: int
    total: int
    feasible: int
    debruijn: int
    feasible_total: str
    debruijn_total: str
    debruijn_feasible: str


def reduction_table(mu_range: Iterable[int]) -> list[ReductionRow]:
    """Total, feasible and de Bruijn counts with their three ratios."""
    rows = []
    for mu in mu_range:
        total = 1 << (1 << mu)
        feasible = count_feasible(mu)
        db = debruijn_count(mu)
        rows.append(
            ReductionRow(
                mu=mu,
                total=total,
                feasible=feasible,
                debruijn=db,
                feasible_total=sci(feasible, total),
                debruijn_total=sci(db, total),
                debruijn_feasible=sci(db, feasible),
            )
        )
    return rows


def reduction_csv(rows: Sequence[ReductionRow]) -> str:
    lines = ["mu,total,feasible,debruijn,feasible/total,debruijn/total,debruijn/feasible"]
    for r in rows:
        lines.append(
            f"{r.mu},{r.total},{r.feasible},{r.debruijn},"
            f"{r.feasible_total},{r.debruijn_total},{r.debruijn_feasible}"
        )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CalibrationReport:
    """Outcome of comparing candidate policies against a reference table."""

    mu: int
    histograms: dict[str, dict[int, int]]
    diffs: dict[str, dict[int, int]]
    l1: dict[str, int]
    exact_matches: tuple[str, ...]
    closest: str


CALIBRATION_POLICIES: tuple[Policy, ...] = (0, 1, "max", "min")


def calibrate_policies(
    reference: Mapping[int, int],
    mu: int = 4,
    policies: tuple[Policy, ...] = CALIBRATION_POLICIES,
    *,
    workers: int = 1,
) -> CalibrationReport:
    """Compare candidate init policies against a reference histogram.

    Reports per-period diffs (computed - reference) and the policy whose
    histogram is closest in L1 distance; exact matches are listed when a
    policy reproduces every bin.
    """
    histograms: dict[str, dict[int, int]] = {}
    diffs: dict[str, dict[int, int]] = {}
    l1: dict[str, int] = {}
    for policy in policies:
        hist = period_histogram(mu, policy, workers=workers)
        histograms[hist.policy] = dict(hist.counts)
        d = {
            t: hist.counts.get(t, 0) - reference.get(t, 0)
            for t in range(1, (1 << mu) + 1)
        }
        diffs[hist.policy] = {t: v for t, v in d.items() if v}
        l1[hist.policy] = sum(abs(v) for v in d.values())
    exact = tuple(name for name, d in diffs.items() if not d)
    closest = min(l1, key=lambda name: (l1[name], name))
    return CalibrationReport(mu, histograms, diffs, l1, exact, closest)
