"""Exception types raised across the package."""


class WalkError(Exception):
    """Base class for every error raised by :mod:`barrierwalk`."""


class BoundaryOverflow(WalkError):
    """Amplitude would leave the stored lattice window."""


class BudgetExceeded(WalkError):
    """More steps requested than the field was allocated for."""


class DegenerateEigenvectors(WalkError, ArithmeticError):
    """The closed-form eigenvector denominator vanishes."""


class QuadratureNodeSingular(WalkError, ArithmeticError):
    """A quadrature node sits on a vanishing denominator."""


class SingularParameterization(WalkError, ValueError):
    """Barrier angle too close to pi/4 for the closed-form route."""


class InsufficientData(WalkError, ValueError):
    pass


class SlopeOutOfRange(WalkError, ValueError):
    pass


class DimensionMismatch(WalkError, ValueError):
    pass


class NotNormalized(WalkError, ValueError):
    pass
