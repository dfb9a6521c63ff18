"""De Bruijn rules and sequences.

A rule is de Bruijn when its state map is a single cycle through all 2^mu
windows; it then emits, from every initial window, the same cyclic
sequence of maximal period 2^mu in which every binary word of length mu
occurs exactly once.  Rules and sequences correspond one to one once each
cyclic sequence is represented by its lexicographically least rotation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import ArityError, NotDeBruijnError, NotFoundError, RangeError
from .rulecore import RuleTable, check_mu
from . import kernels


def _least_rotation_index(s: str) -> int:
    """Booth's algorithm: index of the lexicographically least rotation.

    Runs in linear time over the doubled string with a failure function,
    never comparing more than 2n character pairs.
    """
    d = s + s
    f = [-1] * len(d)
    k = 0
    for j in range(1, len(d)):
        c = d[j]
        i = f[j - k - 1]
        while i != -1 and c != d[k + i + 1]:
            if c < d[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if c != d[k + i + 1]:
            if c < d[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(symbols: str) -> str:
    """The rotation of ``symbols`` that is minimal in lexicographic order."""
    if not symbols:
        raise RangeError("cannot canonicalize an empty sequence")
    k = _least_rotation_index(symbols)
    return symbols[k:] + symbols[:k]


def verify_debruijn_sequence(symbols: str, mu: int) -> bool:
    """True iff ``symbols`` has length 2^mu and all cyclic mu-windows differ."""
    check_mu(mu)
    n = 1 << mu
    if len(symbols) != n or set(symbols) - {"0", "1"}:
        return False
    doubled = symbols + symbols[: mu - 1]
    windows = {int(doubled[i : i + mu], 2) for i in range(n)}
    return len(windows) == n


@dataclass(frozen=True)
class DeBruijnSequence:
    """A de Bruijn sequence stored as its lexicographically least rotation."""

    mu: int
    symbols: str

    def __post_init__(self):
        if not verify_debruijn_sequence(self.symbols, self.mu):
            raise NotDeBruijnError(
                f"not a de Bruijn sequence for mu={self.mu}: {self.symbols!r}"
            )
        if self.symbols != canonical_rotation(self.symbols):
            raise NotDeBruijnError(
                "sequence is not in canonical rotation; build it with "
                "DeBruijnSequence.from_symbols"
            )

    @classmethod
    def from_symbols(cls, mu: int, symbols: str) -> "DeBruijnSequence":
        """Validate ``symbols`` and store its canonical rotation."""
        if not verify_debruijn_sequence(symbols, mu):
            raise NotDeBruijnError(
                f"not a de Bruijn sequence for mu={mu}: {symbols!r}"
            )
        return cls(mu, canonical_rotation(symbols))


def is_debruijn_rule(rule: RuleTable) -> bool:
    """True iff the rule's state map is one cycle through all 2^mu states."""
    return kernels.is_debruijn(rule.mu, rule.value)


def _emitted_cycle_from_zero(rule: RuleTable) -> str:
    # 2^mu output symbols along the walk that starts at window 00..0
    n = rule.size
    mask = n - 1
    s = 0
    out = []
    for _ in range(n):
        b = (rule.value >> s) & 1
        out.append("01"[b])
        s = ((s << 1) & mask) | b
    return "".join(out)


def sequence_of_rule(rule: RuleTable) -> DeBruijnSequence:
    """Canonical sequence emitted by a de Bruijn rule."""
    if not is_debruijn_rule(rule):
        raise NotDeBruijnError(
            f"rule {rule.value} (mu={rule.mu}) is not a de Bruijn rule"
        )
    return DeBruijnSequence(rule.mu, canonical_rotation(_emitted_cycle_from_zero(rule)))


def rule_of_sequence(seq: DeBruijnSequence) -> RuleTable:
    """The unique rule generating ``seq``: each cyclic window maps to its successor."""
    n = 1 << seq.mu
    doubled = seq.symbols + seq.symbols[: seq.mu]
    value = 0
    for i in range(n):
        w = int(doubled[i : i + seq.mu], 2)
        value |= int(doubled[i + seq.mu]) << w
    return RuleTable(seq.mu, value)


def debruijn_count(mu: int) -> int:
    """Number of de Bruijn sequences (and rules): 2^(2^(mu-1) - mu)."""
    check_mu(mu)
    return 1 << ((1 << (mu - 1)) - mu)


def granddaddy(
    mu: int, candidate_rules: Iterable[RuleTable]
) -> tuple[RuleTable, DeBruijnSequence]:
    """De Bruijn rule with the lexicographically least sequence among candidates.

    The candidate stream must cover all de Bruijn rules for ``mu`` (the
    feasibility enumerator's output qualifies).  Partial minima from
    disjoint streams can be merged by taking the min by sequence again.
    """
    check_mu(mu)
    best: tuple[RuleTable, DeBruijnSequence] | None = None
    for rule in candidate_rules:
        if rule.mu != mu:
            raise ArityError(f"candidate has mu={rule.mu}, expected {mu}")
        if not is_debruijn_rule(rule):
            continue
        seq = sequence_of_rule(rule)
        if best is None or seq.symbols < best[1].symbols:
            best = (rule, seq)
    if best is None:
        raise NotFoundError(f"no de Bruijn rule in the candidate stream for mu={mu}")
    return best


def export_state_graph(rule: RuleTable) -> str:
    """The full state graph as DOT text, one out-edge per window.

    Node and edge order is fixed (windows descending by value) so exports
    are byte-stable.
    """
    n = rule.size
    mask = n - 1
    width = rule.mu
    lines = ["digraph state_graph {", f"  // mu={rule.mu} rule={rule.bits}"]
    for s in range(n - 1, -1, -1):
        lines.append(f'  "{s:0{width}b}";')
    for s in range(n - 1, -1, -1):
        t = ((s << 1) & mask) | ((rule.value >> s) & 1)
        lines.append(f'  "{s:0{width}b}" -> "{t:0{width}b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
