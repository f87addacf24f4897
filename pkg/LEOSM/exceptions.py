class LEOSMError(ValueError):
    """Base class for every error raised by LEOSM."""


class DomainError(LEOSMError):
    """A numeric input lies outside the domain of the model."""


class ConfigurationError(LEOSMError):
    """A scheme, constellation or configuration document is invalid."""


class UsageError(LEOSMError):
    """An operation was called with inconsistent arguments."""
