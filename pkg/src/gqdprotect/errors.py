"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix shape does not match the requested subsystem dimensions."""


class InvalidStateError(ValueError):
    """A matrix failed density-matrix validation (Hermitian, unit trace, PSD)."""


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its budget without converging."""


class DegenerateOutcomeError(ArithmeticError):
    """Post-selection succeeded with zero probability; the output cannot be normalized."""


class ConfigError(ValueError):
    """Invalid sweep configuration or command-line input."""
