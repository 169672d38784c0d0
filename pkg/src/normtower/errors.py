"""Exception hierarchy. Exit-code mapping used by the CLI: usage errors -> 2,
cap violations -> 3, verification failures -> 4."""


class NormTowerError(Exception):
    """Base class for all library errors."""


class UsageError(NormTowerError):
    """Malformed or inconsistent caller input."""


class MalformedSpec(UsageError):
    """Unparseable group specification or cycle notation."""


class SubgroupMismatch(UsageError):
    """A handle does not describe a subgroup of the expected group."""


class GroupMismatch(UsageError):
    """Two G-sets over different groups were combined."""


class BadIndices(UsageError):
    """Fracture indices violate 0 <= k < m <= n <= [G:H]."""


class NotAnInterval(UsageError):
    """A class set fails the interval property."""


class NotCoveringMaximum(UsageError):
    """A non-empty interval without G/e was passed where a family interval
    is required."""


class CapExceeded(NormTowerError):
    """Base class for configurable-limit violations."""


class OrderCapExceeded(CapExceeded):
    """Generated group order exceeds the configured cap."""


class EnumerationCapExceeded(CapExceeded):
    """A point or map enumeration exceeds the configured cap."""


class GammaCapExceeded(CapExceeded):
    """Symmetric-group arity exceeds the configured cap."""


class InternalCheckFailed(NormTowerError):
    """An always-on consistency check failed; signals a bug, never expected."""


class MarkMismatch(InternalCheckFailed):
    """Stabilizer multiset and fixed-point counts disagree."""


class IsoMismatch(InternalCheckFailed):
    """Two constructions required to be isomorphic have different canonical
    forms."""


class IntervalViolation(InternalCheckFailed):
    """A degree-map preimage failed the interval property."""
