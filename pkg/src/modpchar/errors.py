"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid or unsupported configuration (bad type, prime, unsupported pair)."""


class BoundError(RuntimeError):
    """A configured resource bound (Coxeter length, group order) was exceeded."""
