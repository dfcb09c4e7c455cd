"""Exception types raised across the package."""


class TmsvKitError(ValueError):
    """Base class for all package-specific errors."""


class EnvelopeError(TmsvKitError):
    """Parameters outside the supported numerical envelope
    (k, l <= 30, r <= 5, epsilon <= 3, operator exponents <= 64)."""


class DegenerateStateError(TmsvKitError):
    """Photon subtraction from an unsqueezed vacuum: the normalization
    vanishes and the state is undefined."""


class CutoffError(TmsvKitError):
    """Fock-space cutoff required to reach the tail tolerance is
    unreasonably large (> 20000 levels)."""


class ConvergenceError(TmsvKitError):
    """Successive quadrature refinements disagree beyond tolerance."""


class BracketError(TmsvKitError):
    """Root bracketing failed: the target value is not attainable on the
    search interval."""


class HeadroomError(TmsvKitError):
    """Truncated-space operator caps are too small for the requested
    operator product."""
