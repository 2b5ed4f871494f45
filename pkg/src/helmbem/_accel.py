"""Optional numba acceleration.

Hot kernels are written twice: a loop form compiled with ``numba.njit`` and a
vectorised numpy form. Setting ``HELMBEM_DISABLE_NUMBA=1`` (or running without
numba installed) selects the numpy path everywhere.
"""

import os

_FLAG = os.environ.get("HELMBEM_DISABLE_NUMBA", "").strip().lower()

try:  # pragma: no cover - depends on environment
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and _FLAG not in ("1", "true", "yes", "on")


def njit(*args, **kwargs):
    """``numba.njit`` when numba is enabled, identity decorator otherwise.

    Functions decorated this way must also run as plain Python, so they are
    restricted to the ``math`` module and scalar/array indexing.
    """
    if not USE_NUMBA:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return _numba.njit(*args, **kwargs)


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
