"""Exception hierarchy shared by every package of the toolkit."""


class SpectralVolError(Exception):
    """Base class for all errors raised by the toolkit."""


class DomainError(SpectralVolError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(SpectralVolError, ValueError):
    """Inputs are individually valid but inconsistent with each other."""


class CurveSpecError(ConfigurationError):
    """A curve specification string could not be parsed."""

    def __init__(self, message: str, position: int = 0) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EstimationError(SpectralVolError, RuntimeError):
    """An estimator could not produce a finite value."""
