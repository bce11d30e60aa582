"""Small dense linear algebra: symmetric eigensolver and the simplex quadratic oracle."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionTooLarge, NonFinite, ShapeMismatch

MAX_SIMPLEX_DIM = 12


def as_symmat(a):
    """Validate a square finite array and return it symmetrised from its lower triangle.

    Works on a single matrix or a stack ``(..., n, n)``. The lower triangle is
    authoritative, so the result is exactly symmetric.
    """
    a = np.asarray(a, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise ShapeMismatch(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFinite("matrix has non-finite entries")
    lower = np.tril(a)
    return lower + np.swapaxes(np.tril(a, -1), -1, -2)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SimplexMin:
    value: float
    argmin: np.ndarray


def sym_eig(a):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations."""
    a = as_symmat(a)
    if a.ndim != 2:
        raise ShapeMismatch("sym_eig takes a single matrix")
    w, v = kernels.eigh_batch(a[None])
    return Spectrum(w[0], v[0])


def eigvalsh_batch(mats):
    """Ascending eigenvalues of a stack of symmetric matrices, shape ``(..., n)``."""
    mats = as_symmat(mats)
    lead = mats.shape[:-2]
    n = mats.shape[-1]
    flat = np.ascontiguousarray(mats.reshape(-1, n, n))
    w, _ = kernels.eigh_batch(flat, 1e-14, 100, False)
    return w.reshape(*lead, n)


def simplex_quadratic_min(a):
    """Exact minimum of ``x^T A x`` over the standard simplex.

    Every nonempty support set is a candidate face; on each the stationarity
    system ``A_J x_J = lambda 1, sum x_J = 1`` is solved and kept when the
    solution is nonnegative. Singular faces are skipped, which loses nothing:
    a flat direction carries the minimum to a smaller face.
    """
    a = as_symmat(a)
    if a.ndim != 2:
        raise ShapeMismatch("simplex_quadratic_min takes a single matrix")
    if a.shape[0] > MAX_SIMPLEX_DIM:
        raise DimensionTooLarge(f"face enumeration limited to n <= {MAX_SIMPLEX_DIM}")
    vals, args = kernels.simplex_min_batch(a[None])
    return SimplexMin(float(vals[0]), args[0])


def simplex_min_batch(mats):
    """Batched ``simplex_quadratic_min``; returns ``(values, argmins)``."""
    mats = as_symmat(mats)
    n = mats.shape[-1]
    if n > MAX_SIMPLEX_DIM:
        raise DimensionTooLarge(f"face enumeration limited to n <= {MAX_SIMPLEX_DIM}")
    lead = mats.shape[:-2]
    vals, args = kernels.simplex_min_batch(np.ascontiguousarray(mats.reshape(-1, n, n)))
    return vals.reshape(lead), args.reshape(*lead, n)


def simplex_grid_min(a, resolution=200):
    """Brute-force grid minimum of ``x^T A x`` over the simplex at spacing ``1/resolution``.

    Independent of the face enumeration; used as its oracle.
    """
    a = as_symmat(a)
    val, x = kernels.simplex_grid_min(np.ascontiguousarray(a), int(resolution))
    return SimplexMin(float(val), np.asarray(x))
