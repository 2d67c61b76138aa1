"""Exception hierarchy shared by all modules."""


class WignerBoundsError(Exception):
    """Base class for every error raised by this package."""


class NonConvergence(WignerBoundsError):
    """Adaptive quadrature hit its refinement limit before meeting tolerance."""


class NormalizationViolation(WignerBoundsError):
    """A Wigner function does not integrate to one."""


class DivergentMoment(WignerBoundsError):
    """A second moment could not be computed (tail integral diverges)."""


class NotPositiveDefinite(WignerBoundsError, ValueError):
    pass


class SingularSystem(WignerBoundsError):
    """Linear constraint system too ill-conditioned to solve."""


class NegativityDetected(WignerBoundsError):
    """Constructed extremal function dips below zero on its support."""


class NoBracket(WignerBoundsError):
    pass


class ParamOutOfRange(WignerBoundsError, ValueError):
    pass


class NoSolution(WignerBoundsError):
    """The requested locus is not reachable for the given parameters."""


class SchemaError(WignerBoundsError, ValueError):
    """Input document violates the Wigner file schema."""
