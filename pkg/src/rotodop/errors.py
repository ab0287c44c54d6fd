"""Exception types raised across the package."""


class RotodopError(Exception):
    """Base class for all package-specific errors."""


class DegenerateRadius(RotodopError):
    """Rotational shift requested at r=0 for a beam with nonzero charge."""


class DegenerateCharges(RotodopError):
    """Change of variables requires l1 != l2; caller must use the Lorentzian branch."""


class QuadratureFailure(RotodopError):
    """Adaptive quadrature did not reach the requested tolerance."""


class InsufficientSamples(RotodopError):
    """Monte Carlo standard error exceeds the configured cap at some grid point."""


class GridTooCoarse(RotodopError):
    """Derivative stencil needs a uniform grid with at least 5 points."""


class NotSinglePeaked(RotodopError):
    """Width extraction requires a single-peaked profile on the grid."""


class HalfMaxNotBracketed(RotodopError):
    """Half-maximum level is not crossed on one of the flanks of the grid."""


class ConfigError(RotodopError):
    """Run configuration failed validation."""
