"""Exception hierarchy for the Fox-Wright library."""


class FoxWrightError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FoxWrightError, ValueError):
    """Input lies outside the region where the requested representation is valid."""


class DeltaError(DomainError):
    """Scale balance differs from -1."""


class ShapeError(DomainError):
    """Parameter lists have inconsistent or empty shapes."""


class ScaleError(DomainError):
    """A scale factor is <= 1/6 where the expansion needs scales > 1/6."""


class SigmaError(DomainError):
    """Auxiliary parameter sigma violates sigma > 0, Re(mu + sigma) > 0."""


class IntegerMuError(DomainError):
    """mu is (numerically) an integer where a non-integer value is required."""


class PoleError(DomainError):
    """Argument sits on a pole of the gamma function."""


class PoleCollisionError(DomainError):
    """Two pole families of the Mellin-Barnes integrand coincide (non-simple pole)."""


class CutError(DomainError):
    """Argument lies on the branch cut [rho, inf)."""


class ToleranceError(FoxWrightError, ArithmeticError):
    """Requested tolerance could not be certified within the term budget."""
