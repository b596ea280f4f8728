"""
Exception hierarchy shared by the services, the CLI and the HTTP router.

InputError and its subclasses mean the caller asked for something invalid
(CLI exit code 2, HTTP 422). StructuralError means an internal consistency
check failed (CLI exit code 3, HTTP 500).
"""


class VerificationError(Exception):
    """Base class for every error raised by the engine."""


class InputError(VerificationError, ValueError):
    pass


class UnsupportedAlgebraError(InputError):
    pass


class UnsupportedInputError(InputError):
    pass


class CapExceededError(InputError):
    pass


class ModeBudgetError(InputError):
    pass


class GridMismatchError(InputError):
    pass


class UnknownCheckError(InputError):
    pass


class StructuralError(VerificationError, RuntimeError):
    pass
