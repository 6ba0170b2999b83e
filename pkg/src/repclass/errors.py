"""Exception types shared across the package."""


class DomainError(ValueError):
    """Invalid parameter for an operation (bad modulus, mismatched moduli, ...)."""


class NonUnitError(DomainError):
    """Scaling factor is not invertible modulo m."""


class CapExceededError(DomainError):
    """An enumeration would exceed the configured hard cap."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


class HypothesisError(Exception):
    """A checked predicate's hypotheses do not hold.

    Deliberately distinct from a False result: "the statement's premises
    fail" and "the statement is refuted" must never be conflated.
    """


class ParseError(ValueError):
    """Malformed textual input; carries the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CheckpointError(RuntimeError):
    """A checkpoint file is unusable (unreadable, or from a different run)."""
