"""Exception hierarchy shared across the package."""


class SpinQCorrError(Exception):
    """Base class for all package errors."""


class NotSymmetric(SpinQCorrError):
    """Matrix handed to the eigensolver is not symmetric within tolerance."""


class DimensionZero(SpinQCorrError):
    """Zero-dimensional matrix."""


class NonPositiveBeta(SpinQCorrError):
    """Inverse temperature must be > 0."""


class NonPositiveTemperature(SpinQCorrError):
    """Temperature must be > 0."""


class InvalidState(SpinQCorrError):
    """Density-matrix invariants violated beyond tolerance."""


class LengthTooLarge(SpinQCorrError):
    """Requested chain length exceeds the configured sector-size cap."""


class ZeroExchange(SpinQCorrError):
    """Exchange coupling must be nonzero."""


class NoRoot(SpinQCorrError):
    """Field value outside the range attained by the critical-point equation."""


class QuadratureFailure(SpinQCorrError):
    """Adaptive quadrature did not reach tolerance at the panel cap."""


class NonUniformGrid(SpinQCorrError):
    """Finite differences require a uniformly spaced grid."""


class HolesPresent(SpinQCorrError):
    """Sweep series contains failed points; differentiation is undefined."""


class AllZero(SpinQCorrError):
    """Normalization or extremum search on an identically zero list."""


class ExtremumOnBoundary(SpinQCorrError):
    """Derivative extremum sits on the sweep boundary; window too narrow."""


class SweepPointFailure(SpinQCorrError):
    """Model evaluation failed at a specific grid point."""

    def __init__(self, param_name: str, value: float, cause: Exception):
        self.param_name = param_name
        self.value = value
        self.cause = cause
        super().__init__(f"model evaluation failed at {param_name}={value!r}: {cause}")
