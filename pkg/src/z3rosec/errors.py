class DomainError(ValueError):
    """Input outside the domain of a model or operation."""


class NumericalError(ArithmeticError):
    """A computation produced numerically unusable output."""


class ConfigError(ValueError):
    """Invalid scenario configuration; ``key`` holds the dotted key path."""

    def __init__(self, message, key=None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key
