"""Exception types shared across the package."""


class DerivationError(RuntimeError):
    """An exact-series derivation produced an inconsistent result."""


class NeedsLaurentError(ZeroDivisionError):
    """Division by a power series whose constant term vanishes."""


class NotInvertibleError(ValueError):
    """A power series cannot be reverted."""


class PoleError(ValueError):
    """Argument sits on a pole of the gamma function."""

    def __init__(self, nearest, message=None):
        self.nearest = nearest
        super().__init__(message or f"gamma pole at {nearest}")


class IterationLimitError(RuntimeError):
    """A convergent series failed to converge within its iteration cap."""


class DegenerateParameterError(ValueError):
    """Parameters lie too close to a removable or true singularity."""


class TruncationError(ValueError):
    """No admissible optimal truncation index exists."""


class NeedsMoreCoefficientsError(ValueError):
    """More expansion coefficients are required than were supplied."""

    def __init__(self, required, available):
        self.required = required
        self.available = available
        super().__init__(
            f"needs coefficient order {required}, only {available} available"
        )


class QuadratureLimitError(RuntimeError):
    """Quadrature did not converge before the level cap."""


class CacheError(ValueError):
    """A coefficient cache file is malformed or failed verification."""
