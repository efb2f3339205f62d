"""Exception hierarchy shared by every module of the package."""


class MuntzError(Exception):
    """Base class for all errors raised by jacobi_muntz."""


class PoleError(MuntzError, ValueError):
    """A gamma-function argument landed on a non-positive integer."""


class DomainError(MuntzError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ParameterError(MuntzError, ValueError):
    """A parameter bundle violates a hard validity constraint."""


class SingularMatrixError(MuntzError, ArithmeticError):
    """A linear system could not be solved because a pivot vanished."""


class ConvergenceError(MuntzError, ArithmeticError):
    """An iterative method hit its iteration cap.

    ``index`` records which eigenvalue (or step) failed, when known.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NonFiniteError(MuntzError, ArithmeticError):
    """A function sample or right-hand side evaluated to inf or nan."""


class IntegrationError(MuntzError, RuntimeError):
    """The ODE integrator gave up (step cap, step underflow)."""
