"""Exception types raised across the package."""


class IsopencilError(Exception):
    pass


class NumericalFailure(IsopencilError):
    """A computation could not produce a trustworthy answer (CLI exit code 2)."""


class NoConvergence(NumericalFailure):
    pass


class DegenerateSpectrum(NumericalFailure):
    pass


class ResidualTooLarge(NumericalFailure):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ClusterAmbiguity(NumericalFailure):
    pass


class NotHermitian(IsopencilError, ValueError):
    pass


class NotSkewAdjoint(IsopencilError, ValueError):
    pass


class DimensionMismatch(IsopencilError, ValueError):
    pass


class DimensionTooLarge(IsopencilError, ValueError):
    pass


class ComplexityLimit(IsopencilError):
    """Enumeration would exceed the configured work budget."""


class ParseError(IsopencilError, ValueError):
    pass
