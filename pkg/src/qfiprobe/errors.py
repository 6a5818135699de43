"""Exception hierarchy shared across the package."""


class QfiProbeError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(QfiProbeError, ValueError):
    """A parameter lies outside its admissible interval."""


class CompletePositivityError(QfiProbeError, ValueError):
    """Noise parameters violate the complete-positivity gate mu2^2 <= mu1."""


class DomainError(QfiProbeError, ValueError):
    """Inputs are outside the domain where an analytic expression is defined."""


class SizeError(QfiProbeError, ValueError):
    """Requested probe size exceeds the brute-force oracle cap."""


class NumericalError(QfiProbeError, RuntimeError):
    """A numerical routine failed or produced an inconsistent intermediate."""


class DegenerateError(QfiProbeError, ValueError):
    """The comparison is undefined for a fully dephasing channel (mu2 = 0)."""


class BracketError(QfiProbeError, ValueError):
    """The predicate does not change value over the given bracket."""
