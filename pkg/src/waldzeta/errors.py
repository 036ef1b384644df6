"""Exception hierarchy shared by the library and the CLI."""


class WaldzetaError(Exception):
    """Base class for all library errors."""


class ValidationError(WaldzetaError, ValueError):
    """Input data violates a stated invariant; ``violations`` lists each one."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations else [message]


class ScopeError(WaldzetaError, ValueError):
    """Parameters are valid but outside the cases a formula covers."""


class ModelNonexistence(ValidationError):
    """No Waldspurger model exists for the given representation and character."""
