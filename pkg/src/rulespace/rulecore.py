"""Rule tables and the shift dynamics they generate.

A generating rule with memory ``mu`` maps every binary word of length mu to
one output symbol.  It is written as a table of 2^mu bits ordered from
input 11..1 down to 00..0, so the table read as a big-endian numeral is the
rule's decimal value and the output for the input word of value ``w`` is
bit ``w`` of that value.

A state word is the window of the mu most recent symbols with the oldest
symbol in the most significant bit.  One update step drops the oldest
symbol and appends the rule output, i.e. the state graph is the standard
binary shift graph with one out-edge per node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityError, RangeError
from . import kernels

#: Largest accepted memory length.  Tables hold 2^mu bits, so 16 keeps a
#: single table at 64 KiB; enumeration operations add their own guards far
#: below this.  Raise it module-wide if you really need wider tables.
MU_MAX = 16


def check_mu(mu: int) -> int:
    """Validate a memory length, returning it unchanged."""
    if not isinstance(mu, int) or isinstance(mu, bool):
        raise RangeError(f"memory length must be an integer, got {mu!r}")
    if not 1 <= mu <= MU_MAX:
        raise RangeError(f"memory length must be in [1, {MU_MAX}], got {mu}")
    return mu


@dataclass(frozen=True)
class RuleTable:
    """A generating rule: memory length plus the table's decimal value."""

    mu: int
    value: int

    def __post_init__(self):
        check_mu(self.mu)
        if not 0 <= self.value < (1 << (1 << self.mu)):
            raise RangeError(
                f"rule value {self.value} out of range for mu={self.mu} "
                f"(must be < 2^{1 << self.mu})"
            )

    @property
    def size(self) -> int:
        """Number of table entries, 2^mu."""
        return 1 << self.mu

    @property
    def bits(self) -> str:
        """The table as a string of 2^mu characters, input 11..1 first."""
        return format(self.value, f"0{self.size}b")

    @classmethod
    def from_bits(cls, bits: str) -> "RuleTable":
        """Build a rule from its table string; mu is inferred from the length."""
        n = len(bits)
        if n < 2 or n & (n - 1):
            raise RangeError(f"rule string length {n} is not a power of two >= 2")
        if set(bits) - {"0", "1"}:
            raise RangeError("rule string may only contain 0 and 1")
        return cls(n.bit_length() - 1, int(bits, 2))


@dataclass(frozen=True)
class StateWord:
    """A window of the mu most recent symbols, oldest in the high bit."""

    mu: int
    value: int

    def __post_init__(self):
        check_mu(self.mu)
        if not 0 <= self.value < (1 << self.mu):
            raise RangeError(
                f"state value {self.value} out of range for mu={self.mu}"
            )

    @property
    def bits(self) -> str:
        return format(self.value, f"0{self.mu}b")

    @classmethod
    def from_bits(cls, bits: str) -> "StateWord":
        if not bits or set(bits) - {"0", "1"}:
            raise RangeError(f"state string must be nonempty binary, got {bits!r}")
        return cls(len(bits), int(bits, 2))


@dataclass(frozen=True)
class OrbitReport:
    """Transient length, period and attractor of one trajectory."""

    transient_length: int
    period: int
    cycle_states: tuple[StateWord, ...]
    emitted_cycle: str


def rule_from_decimal(mu: int, n: int) -> RuleTable:
    """Rule whose 2^mu-bit table is the big-endian expansion of ``n``."""
    check_mu(mu)
    if not 0 <= n < (1 << (1 << mu)):
        raise RangeError(f"decimal {n} out of range for mu={mu}")
    return RuleTable(mu, n)


def parse_rule(text: str, mu: int | None = None) -> RuleTable:
    """Parse a rule from text: a 2^mu-bit binary string, or ``d:<decimal>``.

    Binary strings carry their own mu; the decimal form needs ``mu``.
    """
    text = text.strip()
    if text.startswith("d:"):
        if mu is None:
            raise RangeError("decimal rule text needs an explicit mu")
        try:
            n = int(text[2:], 10)
        except ValueError:
            raise RangeError(f"bad decimal rule text {text!r}") from None
        if n < 0:
            raise RangeError("rule decimal must be nonnegative")
        return rule_from_decimal(mu, n)
    rule = RuleTable.from_bits(text)
    if mu is not None and rule.mu != mu:
        raise ArityError(
            f"rule string encodes mu={rule.mu} but mu={mu} was requested"
        )
    return rule


def format_rule(rule: RuleTable) -> str:
    """Default text form of a rule: its binary table string."""
    return rule.bits


def apply_rule(rule: RuleTable, window: StateWord) -> int:
    """Output symbol for one input window."""
    if rule.mu != window.mu:
        raise ArityError(f"rule has mu={rule.mu}, window has mu={window.mu}")
    return (rule.value >> window.value) & 1


def next_state(rule: RuleTable, s: StateWord) -> StateWord:
    """Shift the window left and append the rule output."""
    if rule.mu != s.mu:
        raise ArityError(f"rule has mu={rule.mu}, state has mu={s.mu}")
    new = ((s.value << 1) & ((1 << s.mu) - 1)) | ((rule.value >> s.value) & 1)
    return StateWord(s.mu, new)


def generate_sequence(rule: RuleTable, init: StateWord, length: int) -> str:
    """The mu symbols of ``init`` followed by length - mu generated symbols."""
    if rule.mu != init.mu:
        raise ArityError(f"rule has mu={rule.mu}, init has mu={init.mu}")
    if length < rule.mu:
        raise RangeError(f"length {length} is shorter than mu={rule.mu}")
    mask = (1 << rule.mu) - 1
    out = [init.bits]
    s = init.value
    for _ in range(length - rule.mu):
        b = (rule.value >> s) & 1
        out.append("01"[b])
        s = ((s << 1) & mask) | b
    return "".join(out)


def detect_orbit(rule: RuleTable, init: StateWord) -> OrbitReport:
    """Walk until the first state revisit and report the attractor.

    The cycle starts at the first revisited state; the emitted cycle holds
    the symbol appended by each step around it.
    """
    if rule.mu != init.mu:
        raise ArityError(f"rule has mu={rule.mu}, init has mu={init.mu}")
    transient, period = kernels.orbit(rule.mu, rule.value, init.value)
    mask = (1 << rule.mu) - 1
    s = init.value
    for _ in range(transient):
        s = ((s << 1) & mask) | ((rule.value >> s) & 1)
    states = []
    emitted = []
    for _ in range(period):
        states.append(StateWord(rule.mu, s))
        b = (rule.value >> s) & 1
        emitted.append("01"[b])
        s = ((s << 1) & mask) | b
    return OrbitReport(transient, period, tuple(states), "".join(emitted))


def total_configuration_count(mu: int) -> int:
    """Number of (rule, initial window) configurations: 2^(2^mu + mu)."""
    check_mu(mu)
    return 1 << ((1 << mu) + mu)
