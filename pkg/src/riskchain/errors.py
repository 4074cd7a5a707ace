"""Exception types shared across the toolkit."""


class RiskChainError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(RiskChainError):
    """A value or structure violates a documented contract."""


class InsufficientDataError(ValidationError):
    """Not enough observations to fit a distribution."""


class SchemaError(ValidationError):
    """A file or payload does not match the expected schema."""


class ConfigurationError(RiskChainError):
    """A simulation input cannot be resolved to something runnable."""
