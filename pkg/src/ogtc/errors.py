"""Exception hierarchy shared by every module."""


class OgtcError(Exception):
    """Base class for all library errors."""


class InstanceError(OgtcError, ValueError):
    pass


class IndexOutOfRange(InstanceError):
    pass


class DuplicateColumn(InstanceError):
    pass


class OverflowRisk(InstanceError):
    pass


class LengthMismatch(OgtcError, ValueError):
    pass


class InfeasibleParents(OgtcError):
    """A parent genotype is not a feasible solution."""


class ParentNotIndependent(InfeasibleParents):
    pass


class ParentNotClique(InfeasibleParents):
    pass


class ParentNotCover(InfeasibleParents):
    pass


class DiffSetTooLarge(OgtcError):
    pass


class MalformedNetwork(OgtcError, ValueError):
    pass


class NotAPackingInstance(OgtcError, ValueError):
    pass


class NegativeCoefficient(OgtcError, ValueError):
    pass


class CombinationBlowup(OgtcError):
    pass


class TooLarge(OgtcError):
    pass


class WeightBelowThreshold(OgtcError, ValueError):
    pass


class SamplerFailed(OgtcError):
    pass


class BadParams(OgtcError, ValueError):
    pass


class ValidationError(OgtcError, ValueError):
    pass


class ParseError(OgtcError, ValueError):
    """Malformed input text; carries the offending location when known."""

    def __init__(self, message, line=None, col=None, where=None):
        self.line = line
        self.col = col
        self.where = where
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if col is not None:
            loc.append(f"column {col}")
        if where is not None:
            loc.append(where)
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)


class InternalInvariantError(OgtcError, AssertionError):
    """An exact identity that must always hold was violated (a bug, not bad input)."""


class FlowDualityViolated(InternalInvariantError):
    pass


class AdapterContractViolation(InternalInvariantError):
    pass


class PartitionViolated(AdapterContractViolation):
    pass


class PairPropertyViolated(InternalInvariantError):
    pass
