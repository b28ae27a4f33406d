"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class ParseError(InputError):
    """Raised when an instance document is malformed.

    ``field`` names the offending location, e.g. ``"p_hat[1]"``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class OracleLimitError(RuntimeError):
    """Raised when an exhaustive oracle is asked to enumerate too much."""


class InnerSolverError(RuntimeError):
    """Raised when the nominal solver inside a reduction sweep fails.

    Carries the dual candidate ``mu`` that was being evaluated.
    """

    def __init__(self, mu, cause: BaseException):
        self.mu = tuple(mu)
        super().__init__(f"nominal solver failed at mu={self.mu}: {cause}")
