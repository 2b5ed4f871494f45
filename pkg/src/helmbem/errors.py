"""Exception and warning types raised across the package."""


class DomainError(ValueError):
    """Argument outside the domain where a function is defined or supported."""


class SpecialFunctionOverflow(OverflowError):
    """A special-function value is not representable in double precision."""


class CoincidenceError(ValueError):
    """Kernel evaluated at coincident source and target points."""


class SingularSystemError(RuntimeError):
    """Galerkin matrix is numerically singular (or LU pivot growth blew up)."""


class TruncationWarning(UserWarning):
    """Fourier truncation too small to carry the requested function."""


class QuadratureWarning(UserWarning):
    """Quadrature accuracy may be insufficient (near-boundary targets, etc.)."""


class SingularityWarning(UserWarning):
    """A multiplier denominator is numerically close to zero."""


class MultiplierSingularityError(ArithmeticError):
    """A multiplier denominator vanished numerically; refuses to divide."""
