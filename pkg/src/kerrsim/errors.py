class NumericalGuardError(RuntimeError):
    """Raised when an integration leaves its trusted step-size regime."""
