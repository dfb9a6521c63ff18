"""Structural filters that shrink the rule space around the de Bruijn set.

Every de Bruijn rule must
  * start with 0 and end with 1 (no fixed point at either constant window),
  * have its second half equal to the bitwise complement of the first, and
  * factor as (h + 1) * (2^W - 1), W = 2^(mu-1), h = first-half value, with
    an evil odd factor (odd, with an even number of 1-bits), and
  * avoid one forbidden joint value on a mu-dependent pair of first-half
    positions (both 1 forbidden for even mu, both 0 for odd mu).

Under the complement symmetry the factorization is an identity: the rule
value is h*2^W + (2^W - 1 - h) = (h + 1)(2^W - 1).  The filters leave a
feasible set that contains all de Bruijn rules yet is a vanishing fraction
of the 2^(2^mu) total; see the census module for the reduction table.

mu = 2 degenerates (no free bits, and the tabulated factorization is
3 x 1 rather than (h+1) x (2^2-1)) and is special-cased throughout; its
feasible set is exactly the single de Bruijn rule 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .errors import CapacityError, RangeError, StructureError
from .rulecore import RuleTable, check_mu

#: Full enumeration is guarded at this memory length (2^(mu-1)-2 free bits;
#: mu = 6 already means 2^30 candidates).  Pass force=True to go beyond.
ENUMERATION_GUARD_MU = 5


def _half_width(mu: int) -> int:
    return 1 << (mu - 1)


def _check_filter_mu(mu: int) -> int:
    check_mu(mu)
    if mu < 2:
        raise RangeError("structural filters are defined for mu >= 2")
    return mu


def boundary_ok(rule: RuleTable) -> bool:
    """First table bit 0 and last table bit 1."""
    top = 1 << (rule.size - 1)
    return not (rule.value & top) and bool(rule.value & 1)


def symmetry_ok(rule: RuleTable) -> bool:
    """Second half of the table is the complement of the first half."""
    w = _half_width(rule.mu)
    mask = (1 << w) - 1
    return (rule.value & mask) == (mask ^ (rule.value >> w))


def phi(mu: int) -> int:
    """Fixed factor of the rule-value factorization: 2^(2^(mu-1)) - 1.

    mu = 2 keeps the tabulated exception phi(2) = 1, under which the whole
    rule value 3 plays the evil-odd factor.
    """
    _check_filter_mu(mu)
    if mu == 2:
        return 1
    return (1 << _half_width(mu)) - 1


def is_evil_odd(n: int) -> bool:
    """Odd with an even number of 1-bits."""
    return n > 0 and bool(n & 1) and n.bit_count() % 2 == 0


def factorize_rule(rule: RuleTable) -> tuple[int, int] | None:
    """(evil_factor, phi) when the rule value has an evil odd cofactor.

    Requires the boundary and complement structure; the quotient
    value / phi(mu) is then exact (it equals h + 1 for mu >= 3, and the
    whole value for mu = 2).  Returns None when the cofactor is not evil.
    """
    _check_filter_mu(rule.mu)
    if not (boundary_ok(rule) and symmetry_ok(rule)):
        raise StructureError(
            f"rule {rule.value} (mu={rule.mu}) lacks boundary/complement structure"
        )
    p = phi(rule.mu)
    factor = rule.value // p
    if is_evil_odd(factor):
        return factor, p
    return None


@dataclass(frozen=True)
class ConstraintPair:
    """Two first-half positions that must not both hold the forbidden value."""

    mu: int
    p1: int
    p2: int
    forbidden_value: int
    conjectured: bool = False

    def __post_init__(self):
        if not 1 <= self.p1 < self.p2 <= _half_width(self.mu):
            raise RangeError(
                f"positions ({self.p1}, {self.p2}) out of range for mu={self.mu}"
            )


def constrained_pair(mu: int) -> ConstraintPair:
    """The mu-dependent forbidden position pair, built recursively.

    Base (1, 2) at mu = 2; odd mu maps (p1, p2) of mu-1 to (p2, 2*p2 - 1);
    mu divisible by 4 maps to (p2, 2*p2).  The remaining branch,
    mu = 2 (mod 4) with mu >= 6, is not covered by those recursions; the
    continuation (p2, 2*p2) is used and flagged conjectured.  It has been
    validated by sampling at mu = 6, where (11, 22) is the unique
    never-jointly-1 pair over the de Bruijn rules (see README).
    """
    _check_filter_mu(mu)
    p1, p2 = 1, 2
    conjectured = False
    for m in range(3, mu + 1):
        if m % 2 == 1:
            p1, p2 = p2, 2 * p2 - 1
        else:
            if m % 4 != 0 and m >= 6:
                conjectured = True
            p1, p2 = p2, 2 * p2
    return ConstraintPair(mu, p1, p2, forbidden_value=1 - mu % 2, conjectured=conjectured)


def _half_bit(half: int, mu: int, position: int) -> int:
    # 1-based position within the first half; position 1 is the high bit
    return (half >> (_half_width(mu) - position)) & 1


def pair_ok(rule: RuleTable) -> bool:
    """False iff both constrained positions hold the forbidden value."""
    pair = constrained_pair(rule.mu)
    half = rule.value >> _half_width(rule.mu)
    b1 = _half_bit(half, rule.mu, pair.p1)
    b2 = _half_bit(half, rule.mu, pair.p2)
    return not (b1 == pair.forbidden_value and b2 == pair.forbidden_value)


@dataclass(frozen=True)
class FeasibilityProfile:
    """Per-rule record of each structural filter."""

    rule: RuleTable
    boundary_ok: bool
    symmetry_ok: bool
    pair_ok: bool
    evil_factor: int | None
    phi: int

    @property
    def feasible(self) -> bool:
        return (
            self.boundary_ok
            and self.symmetry_ok
            and self.evil_factor is not None
            and self.pair_ok
        )


def is_feasible(rule: RuleTable) -> FeasibilityProfile:
    """Evaluate every filter on one rule."""
    _check_filter_mu(rule.mu)
    b = boundary_ok(rule)
    s = symmetry_ok(rule)
    factor = None
    if b and s:
        found = factorize_rule(rule)
        if found is not None:
            factor = found[0]
    return FeasibilityProfile(
        rule=rule,
        boundary_ok=b,
        symmetry_ok=s,
        pair_ok=pair_ok(rule),
        evil_factor=factor,
        phi=phi(rule.mu),
    )


def _value_from_half(mu: int, half: int) -> int:
    # boundary + complement symmetry collapse the table to its first half
    w = _half_width(mu)
    return (half + 1) * ((1 << w) - 1)


def mirror_rule(rule: RuleTable) -> RuleTable:
    """Reverse the interior of the first half, rebuilding the second by complement.

    An involution on structurally valid rules that maps de Bruijn rules to
    de Bruijn rules.
    """
    if not (boundary_ok(rule) and symmetry_ok(rule)):
        raise StructureError(
            f"rule {rule.value} (mu={rule.mu}) lacks boundary/complement structure"
        )
    w = _half_width(rule.mu)
    interior = (rule.value >> (w + 1)) & ((1 << (w - 2)) - 1)
    reversed_interior = int(format(interior, f"0{w - 2}b")[::-1], 2) if w > 2 else 0
    return RuleTable(rule.mu, _value_from_half(rule.mu, reversed_interior << 1))


def _pair_bits(mu: int) -> tuple[int, int, int]:
    pair = constrained_pair(mu)
    w = _half_width(mu)
    return 1 << (w - pair.p1), 1 << (w - pair.p2), pair.forbidden_value


def enumerate_feasible(
    mu: int,
    start: int = 0,
    stop: int | None = None,
    *,
    force: bool = False,
) -> Iterator[RuleTable]:
    """Yield every feasible rule in increasing decimal order.

    Only the 2^(mu-1) - 2 free interior bits of the first half are
    enumerated; evil parity and the pair constraint are tested on the
    interior value g directly (the factor h + 1 = (g << 1) + 1 is evil iff
    g has odd parity).  ``start``/``stop`` bound the interior index space
    [0, 2^(2^(mu-1)-2)), enabling partitioned scans whose concatenation in
    range order preserves the global order.
    """
    _check_filter_mu(mu)
    if mu > ENUMERATION_GUARD_MU and not force:
        raise CapacityError(
            f"enumerate_feasible(mu={mu}) covers 2^{_half_width(mu) - 2} "
            "candidates; pass force=True if you mean it"
        )
    if mu == 2:
        if start <= 0 and (stop is None or stop > 0):
            yield RuleTable(2, 3)
        return
    free = _half_width(mu) - 2
    end = 1 << free if stop is None else min(stop, 1 << free)
    m1, m2, forbidden = _pair_bits(mu)
    want = (m1 | m2) if forbidden == 1 else 0
    both = m1 | m2
    for g in range(max(start, 0), end):
        if g.bit_count() % 2 == 0:
            continue
        h = g << 1
        if (h & both) == want:
            continue
        yield RuleTable(mu, _value_from_half(mu, h))


def count_feasible(mu: int) -> int:
    """Size of the feasible set.

    Closed form 3 * 2^(2^(mu-1) - 5) for mu >= 4 (half the free-bit
    assignments survive evil parity, then the pair constraint removes a
    quarter).  mu = 3 is 2 by exhaustion (the two constraints overlap
    there) and mu = 2 is the single tabulated rule.
    """
    _check_filter_mu(mu)
    if mu == 2:
        return 1
    if mu == 3:
        return 2
    return 3 * (1 << (_half_width(mu) - 5))


def sample_feasible(
    mu: int,
    seed: int,
    n: int | None,
    *,
    unique: bool = False,
    apply_pair: bool = True,
) -> Iterator[RuleTable]:
    """Yield ``n`` uniform draws from the feasible set, deterministic per seed.

    Free interior bits are drawn uniformly and rejection-sampled on evil
    parity and (unless ``apply_pair`` is False, for constraint-validation
    experiments) the pair constraint.  ``unique`` skips repeated rules and
    makes the stream finite: it ends once the whole population has been
    seen.  ``n=None`` leaves the stream open-ended.
    """
    _check_filter_mu(mu)
    if n is not None and n < 0:
        raise RangeError("sample count must be nonnegative")
    rng = random.Random(seed)
    if mu == 2:
        emitted = 0
        while n is None or emitted < n:
            yield RuleTable(2, 3)
            emitted += 1
            if unique:
                return
        return
    free = _half_width(mu) - 2
    population = count_feasible(mu) if apply_pair else 1 << (free - 1)
    m1, m2, forbidden = _pair_bits(mu)
    want = (m1 | m2) if forbidden == 1 else 0
    both = m1 | m2
    seen: set[int] = set()
    emitted = 0
    while n is None or emitted < n:
        if unique and len(seen) >= population:
            return
        g = rng.getrandbits(free)
        if g.bit_count() % 2 == 0:
            continue
        h = g << 1
        if apply_pair and (h & both) == want:
            continue
        if unique:
            if h in seen:
                continue
            seen.add(h)
        emitted += 1
        yield RuleTable(mu, _value_from_half(mu, h))
