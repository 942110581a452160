"""Exception types shared across the package."""


class ShearSpectrumError(Exception):
    """Base class for all package-specific failures."""


class MultipleNegativeRoots(ShearSpectrumError):
    """A truncated characteristic polynomial has more than one negative root."""


class NoRootAtNmax(ShearSpectrumError):
    """No negative root was found up to the configured truncation ceiling.

    For wavenumbers below one a negative root must appear at some finite
    truncation order, so hitting the ceiling without one is an anomaly,
    not a stability verdict.
    """


class ResidualTooLarge(ShearSpectrumError):
    """A reconstructed eigenfunction fails the recurrence residual check."""


class StepUnstable(ShearSpectrumError):
    """The RK4 step size is outside the integrator's stability envelope."""


class DegenerateFit(ShearSpectrumError):
    """The growth-rate fit window is empty, too short, or has no variance."""


class EigensolverFailure(ShearSpectrumError):
    """The dense eigensolver failed to converge or produced poor residuals."""
