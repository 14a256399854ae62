"""Exceptions shared across modules."""


class InvariantViolation(RuntimeError):
    """Two independent computations disagreed; the result cannot be trusted."""
