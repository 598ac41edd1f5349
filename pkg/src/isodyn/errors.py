"""Exception types raised across the package."""


class IsodynError(Exception):
    """Base class for all package errors."""


class DegenerateInput(IsodynError, ValueError):
    pass


class ModeMismatch(IsodynError, TypeError):
    """Exact and float scalars were combined."""


class SolverDiverged(IsodynError, RuntimeError):
    """Root finder hit its iteration cap; ``partial`` holds the last iterate."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class IsodynamicUndefined(IsodynError, ValueError):
    """The isodynamic map is not defined for this input."""

    def __init__(self, report):
        super().__init__(f"isodynamic map undefined: {report.status.value}"
                         + (f" (witness {report.witness!r})" if report.witness is not None else ""))
        self.report = report


class BinomialDegenerate(IsodynError, ValueError):
    """The associated rational function is constant: P = (z + t)^d."""


class DegreeMismatch(IsodynError, ValueError):
    pass


class NotDisjoint(IsodynError, ValueError):
    pass


class Undefined(IsodynError, ValueError):
    pass
