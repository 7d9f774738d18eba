"""Exception types shared across the package."""


class DimensionCapError(ValueError):
    """Requested bath exceeds the configured Hilbert-space dimension cap."""


class NeverEntangledError(RuntimeError):
    """The negativity trace never rises above the zero threshold."""


class NoReturnToZeroError(RuntimeError):
    """Negativity rises but does not return to zero inside the time window."""
