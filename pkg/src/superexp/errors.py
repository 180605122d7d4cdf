"""Exception hierarchy shared by every module in the package."""


class SuperexpError(Exception):
    """Base class for all package errors."""


class InstanceSyntaxError(SuperexpError, ValueError):
    """Serialized input could not be read (bad JSON, bad DIMACS, missing field)."""


class RangeError(SuperexpError, ValueError):
    """An index lies outside its declared range."""


class InvariantError(SuperexpError, ValueError):
    """A structural invariant of an instance or decomposition is violated."""


class KindMismatch(SuperexpError, TypeError):
    """Witness variant does not match the problem it is checked against."""


class EnvelopeExceeded(SuperexpError, ValueError):
    """Requested size lies outside the supported (exhaustively verifiable) envelope."""


# reductions

class ReductionError(SuperexpError):
    pass


class ClauseWidth(ReductionError, ValueError):
    pass


class KTooSmall(ReductionError, ValueError):
    pass


class SizeMismatch(ReductionError, ValueError):
    pass


class FlavorMismatch(ReductionError, ValueError):
    pass


class NotRowRestricted(ReductionError, ValueError):
    pass


class SetOutOfRange(ReductionError, ValueError):
    pass


class MissingDecomposition(ReductionError, ValueError):
    pass


class InvalidTargetWitness(ReductionError, ValueError):
    pass


class InvalidSourceWitness(ReductionError, ValueError):
    pass


class ExtractionFailed(ReductionError):
    """A verified target witness could not be mapped back.

    Raised, never papered over: on a verified witness this is a soundness
    counterexample for the reduction.
    """


# hashing

class NotPrime(SuperexpError, ValueError):
    pass


class PrimeOutOfRange(SuperexpError, ValueError):
    pass


class FksBoundViolated(SuperexpError, AssertionError):
    pass


# widths

class EdgeNotInBag(SuperexpError, RuntimeError):
    pass
