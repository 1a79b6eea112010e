"""Exception types shared across the engine."""


class ValidationError(ValueError):
    """Input violates a structural invariant (bad word, incomplete code, ...)."""


class BudgetExhausted(RuntimeError):
    """A randomized search ran out of retries.

    Carries a diagnostics dict describing the failing search state.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
