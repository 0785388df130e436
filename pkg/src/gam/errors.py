"""Shared exception types."""


class InfeasibleError(RuntimeError):
    """Raised when a constraint set or search target cannot be satisfied."""


class SchemaError(ValueError):
    """Raised when a CSV/JSON input does not match the expected schema."""
