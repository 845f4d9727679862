"""Exception hierarchy shared across the package."""


class QuatlatError(Exception):
    """Base class for all package-specific errors."""


class ParseError(QuatlatError):
    """Malformed field-element, quaternion or order-file input."""


class FactorLimitExceeded(QuatlatError):
    """The norm of the element to factor exceeds the trial-division bound."""


class NotATotallyPositiveUnit(QuatlatError):
    pass


class NotPrime(QuatlatError):
    pass


class AlgebraMismatch(QuatlatError):
    pass


class NotDefinite(QuatlatError):
    pass


class RankDeficient(QuatlatError):
    pass


class NotStable(QuatlatError):
    """Lattice is not stable under multiplication by the ring of integers."""


class NotContained(QuatlatError):
    pass


class NotCyclic(QuatlatError):
    pass


class PreconditionViolated(QuatlatError):
    pass


class PosetNotLinear(QuatlatError):
    pass


class NoGeneratorFound(QuatlatError):
    pass


class GeneratorUnavailable(QuatlatError):
    pass


class NoFormula(QuatlatError):
    pass


class CapacityError(QuatlatError):
    """A finite quotient or search step exceeds the configured size cap."""
