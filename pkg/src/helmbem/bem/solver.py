"""Dense LU solve of Galerkin systems with pivot-growth and residual checks."""

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from ..errors import SingularSystemError
from .projection import DensityVector

PIVOT_GROWTH_LIMIT = 1e8
RESIDUAL_TOL = 1e-10


def solve_galerkin(system, rhs=None):
    """Solve ``system.matrix x = rhs`` by LU with partial pivoting.

    Raises
    ------
    SingularSystemError
        If a pivot vanishes, the growth factor ``max|U| / max|A|`` exceeds
        ``PIVOT_GROWTH_LIMIT``, or the relative residual stays above
        ``RESIDUAL_TOL`` after one step of iterative refinement.
    """
    b = system.rhs if rhs is None else np.asarray(rhs, dtype=complex)
    if b is None:
        raise ValueError("system has no right-hand side")
    A = system.matrix
    if not np.all(np.isfinite(A)):
        raise SingularSystemError("matrix has non-finite entries")
    amax = np.abs(A).max()
    if amax == 0.0:
        raise SingularSystemError("matrix is identically zero")
    with warnings.catch_warnings():
        # exact singularity is reported below with context
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(A, check_finite=False)
    diag = np.abs(np.diag(lu))
    growth = np.abs(np.triu(lu)).max() / amax
    if diag.min() <= np.finfo(float).eps * amax * A.shape[0] or growth > PIVOT_GROWTH_LIMIT:
        raise SingularSystemError(
            f"I + P_N K not invertible at this resolution (min pivot {diag.min():.3e}, growth {growth:.3e})"
        )
    x = lu_solve((lu, piv), b, check_finite=False)
    bnorm = np.linalg.norm(b) or 1.0
    res = np.linalg.norm(A @ x - b) / bnorm
    if res > RESIDUAL_TOL:
        x = x + lu_solve((lu, piv), b - A @ x, check_finite=False)
        res = np.linalg.norm(A @ x - b) / bnorm
        if res > RESIDUAL_TOL:
            raise SingularSystemError(f"relative residual {res:.3e} above {RESIDUAL_TOL:g}")
    return DensityVector(x, system.space)
