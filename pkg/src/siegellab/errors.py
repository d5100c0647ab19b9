"""Exception hierarchy shared by all siegellab modules."""


class SiegelLabError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SiegelLabError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(SiegelLabError, ZeroDivisionError):
    """Evaluation requested exactly at a pole where it is disallowed."""


class LabelingError(SiegelLabError):
    """Root pair cannot be labeled with one root outside and one inside the unit circle."""


class HomeomorphismError(SiegelLabError):
    """Circle restriction is not an orientation-preserving homeomorphism."""


class ConvergenceError(SiegelLabError, RuntimeError):
    """Iterative procedure exhausted its budget.

    ``bracket`` carries the last enclosing interval when one exists.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class OrbitError(SiegelLabError, RuntimeError):
    """Orbit computation failed (escape to infinity or numerical collapse).

    ``iterate`` names the offending orbit index.
    """

    def __init__(self, message, iterate=None):
        super().__init__(message)
        self.iterate = iterate
