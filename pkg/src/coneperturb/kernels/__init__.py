"""Hot numeric kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time. Set ``CONEPERTURB_PURE_NUMPY=1`` to
force the numpy path; it is also used when numba is not installed. Both
backends expose the same three functions:

``eigh_batch(mats, rel_tol=1e-14, max_sweeps=100, vectors=True)``
    Cyclic Jacobi eigendecomposition of a stack of symmetric matrices.
    Returns ascending eigenvalues ``(b, n)`` and eigenvectors ``(b, n, n)``.
``simplex_min_batch(mats, pivot_tol=1e-12, feas_tol=1e-12)``
    Exact minimum of ``x^T A x`` over the standard simplex by enumerating
    every support set. Returns values ``(b,)`` and minimisers ``(b, n)``.
``simplex_grid_min(a, resolution)``
    Brute-force minimum over the simplex grid with spacing ``1/resolution``.
"""

import os

from . import _numpy

ENV_FLAG = "CONEPERTURB_PURE_NUMPY"


def _numba_requested():
    return os.environ.get(ENV_FLAG, "").strip().lower() not in {"1", "true", "yes", "on"}


numba_impl = None
if _numba_requested():
    try:
        from . import _numba as numba_impl
    except ImportError:  # pragma: no cover - numba is optional
        numba_impl = None

numpy_impl = _numpy
_impl = numba_impl if numba_impl is not None else numpy_impl
BACKEND = "numba" if _impl is numba_impl else "numpy"

eigh_batch = _impl.eigh_batch
simplex_min_batch = _impl.simplex_min_batch
simplex_grid_min = _impl.simplex_grid_min

__all__ = ["BACKEND", "ENV_FLAG", "eigh_batch", "simplex_min_batch", "simplex_grid_min",
           "numba_impl", "numpy_impl"]
