"""Backend selection for the compiled kernels.

Set ``SECONDKIND_DISABLE_NUMBA=1`` to force the pure-numpy path.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None
DISABLED = os.environ.get("SECONDKIND_DISABLE_NUMBA", "").lower() not in ("", "0", "false", "no")
USE_NUMBA = HAVE_NUMBA and not DISABLED
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(fn):
    """Compile ``fn`` with numba when available, else return it unchanged."""
    if numba is None:
        return fn
    return numba.njit(cache=True, fastmath=False)(fn)
