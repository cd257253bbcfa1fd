"""Exception types shared across the package."""


class UsageError(ValueError):
    """Caller asked for something outside the supported domain."""


class ResourceError(RuntimeError):
    """Request would exceed the configured memory or work budget."""


class QuadratureError(RuntimeError):
    """A quadrature failed to reach the requested tolerance."""


class HypothesisError(UsageError):
    """A named hypothesis of an estimate is violated by the parameters.

    The message names the failing inequality so scans can report exactly
    which condition ruled the point out.
    """


class ContradictionError(AssertionError):
    """A claimed inequality came out false on concrete inputs.

    Raised by the bound-checking helpers when the left side is positive
    while the proven majorant is zero, or when a ratio exceeds its proven
    cap beyond tolerance. This is an assertion about mathematics, not
    about user input, hence AssertionError.
    """


class ConstraintViolationError(RuntimeError):
    """Initial data fails the elliptic constraint beyond tolerance."""


class BlowupError(RuntimeError):
    """The evolved state left the floating-point range.

    Carries the simulation time at which the first non-finite value was
    detected.
    """

    def __init__(self, t: float, message: str | None = None):
        self.t = float(t)
        super().__init__(message or f"non-finite state at t={t:.6g}")
