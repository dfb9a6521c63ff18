"""Exception types raised by the rulespace package."""


class RuleSpaceError(Exception):
    """Base class for all domain errors raised by this package."""


class RangeError(RuleSpaceError, ValueError):
    """A numeric argument lies outside its documented domain."""


class ArityError(RuleSpaceError, ValueError):
    """Two arguments disagree on the memory length mu."""


class StructureError(RuleSpaceError, ValueError):
    """A rule lacks the boundary/complement structure an operation requires."""


class NotDeBruijnError(RuleSpaceError, ValueError):
    """A rule or sequence fails the de Bruijn property."""


class NotFoundError(RuleSpaceError, LookupError):
    """A search over a candidate stream produced no result."""


class CapacityError(RuleSpaceError, RuntimeError):
    """A guarded enumeration would be too large; pass force=True to override."""


class DataError(RuleSpaceError, ValueError):
    """A dataset or model file holds invalid or inconsistent content."""
