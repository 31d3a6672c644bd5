"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: validation-type errors exit 1,
solver failures exit 2.
"""


class HamshallowError(Exception):
    """Base class for all package errors."""

    exit_code = 1
    kind = "error"

    def to_dict(self) -> dict:
        return {"error": self.kind, "message": str(self)}


class ParameterError(HamshallowError, ValueError):
    kind = "parameter"


class DomainError(HamshallowError, ValueError):
    kind = "domain"


class ValidationError(HamshallowError, ValueError):
    kind = "validation"


class UsageError(HamshallowError, ValueError):
    kind = "usage"


class SizeError(HamshallowError, ValueError):
    """Raised when a dense construction would exceed the desk-scale caps."""

    kind = "size"


class PreconditionError(HamshallowError, ValueError):
    kind = "precondition"


class SolverError(HamshallowError, RuntimeError):
    exit_code = 2
    kind = "solver"

    def __init__(self, message: str, best_residual: float | None = None):
        super().__init__(message)
        self.best_residual = best_residual

    def to_dict(self) -> dict:
        out = super().to_dict()
        if self.best_residual is not None:
            out["best_residual"] = self.best_residual
        return out
