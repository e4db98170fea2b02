"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed argument: wrong shape, non-finite entries, out-of-range value."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation (non-PD or singular matrix)."""


class NumericalError(ArithmeticError):
    """A computation produced an overflowed or non-finite result."""


class ConfigError(ValueError):
    """An experiment configuration file cannot be parsed or validated."""
