"""Pure-numpy kernels, vectorised across the batch axis instead of JIT-compiled."""

from functools import lru_cache
from itertools import combinations

import numpy as np


def eigh_batch(mats, rel_tol=1e-14, max_sweeps=100, vectors=True):
    a = np.array(mats, dtype=float)
    b, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), (b, n, n)).copy()
    thresh = rel_tol * np.sqrt(np.einsum("bij,bij->b", a, a))
    offmask = ~np.eye(n, dtype=bool)
    rows = np.arange(b)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(a[:, offmask] ** 2, axis=1))
        active = off > thresh
        if not active.any():
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                rot = active & (apq != 0.0)
                if not rot.any():
                    continue
                safe = np.where(rot, apq, 1.0)
                tau = (a[:, q, q] - a[:, p, p]) / (2.0 * safe)
                root = np.sqrt(1.0 + tau * tau)
                t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + root)
                c = np.where(rot, 1.0 / np.sqrt(1.0 + t * t), 1.0)
                s = np.where(rot, t * c, 0.0)
                cc, ss = c[:, None], s[:, None]
                akp, akq = a[:, :, p].copy(), a[:, :, q].copy()
                a[:, :, p] = cc * akp - ss * akq
                a[:, :, q] = ss * akp + cc * akq
                apk, aqk = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = cc * apk - ss * aqk
                a[:, q, :] = ss * apk + cc * aqk
                a[rows[rot], p, q] = 0.0
                a[rows[rot], q, p] = 0.0
                if vectors:
                    vkp, vkq = v[:, :, p].copy(), v[:, :, q].copy()
                    v[:, :, p] = cc * vkp - ss * vkq
                    v[:, :, q] = ss * vkp + cc * vkq
    d = np.diagonal(a, axis1=1, axis2=2)
    order = np.argsort(d, axis=1, kind="stable")
    w = np.take_along_axis(d, order, axis=1)
    if not vectors:
        return w, np.zeros((b, n, n))
    return w, np.take_along_axis(v, order[:, None, :], axis=2)


def _solve_batch(m, rhs, pivot_tol):
    """Solve each m[k] x = rhs[k] with partial pivoting; pivot_tol is per matrix."""
    m = m.copy()
    rhs = rhs.copy()
    b, size, _ = m.shape
    rows = np.arange(b)
    ok = np.ones(b, dtype=bool)
    for col in range(size):
        piv = col + np.argmax(np.abs(m[:, col:, col]), axis=1)
        ok &= np.abs(m[rows, piv, col]) >= pivot_tol
        swap_rows = m[rows, piv].copy()
        m[rows, piv] = m[:, col]
        m[:, col] = swap_rows
        swap_rhs = rhs[rows, piv].copy()
        rhs[rows, piv] = rhs[:, col]
        rhs[:, col] = swap_rhs
        pivot = np.where(ok, m[:, col, col], 1.0)
        for r in range(col + 1, size):
            factor = m[:, r, col] / pivot
            m[:, r, col:] -= factor[:, None] * m[:, col, col:]
            rhs[:, r] -= factor * rhs[:, col]
    x = np.zeros_like(rhs)
    for r in range(size - 1, -1, -1):
        acc = rhs[:, r] - np.einsum("bc,bc->b", m[:, r, r + 1:], x[:, r + 1:])
        x[:, r] = acc / np.where(ok, m[:, r, r], 1.0)
    return x, ok


def simplex_min_batch(mats, pivot_tol=1e-12, feas_tol=1e-12):
    a = np.asarray(mats, dtype=float)
    b, n, _ = a.shape
    tol = pivot_tol * np.maximum(1.0, np.abs(a).reshape(b, -1).max(axis=1))
    best = np.full(b, np.inf)
    best_x = np.zeros((b, n))
    for k in range(1, n + 1):
        for support in combinations(range(n), k):
            idx = np.array(support)
            m = np.zeros((b, k + 1, k + 1))
            m[:, :k, :k] = a[:, idx[:, None], idx[None, :]]
            m[:, :k, k] = -1.0
            m[:, k, :k] = 1.0
            rhs = np.zeros((b, k + 1))
            rhs[:, k] = 1.0
            sol, ok = _solve_batch(m, rhs, tol)
            xs = sol[:, :k]
            ok &= np.all(xs >= -feas_tol, axis=1)
            xs = np.clip(xs, 0.0, None)
            total = xs.sum(axis=1)
            ok &= total > 0.0
            x = np.zeros((b, n))
            x[:, idx] = xs / np.where(total > 0.0, total, 1.0)[:, None]
            q = np.einsum("bi,bij,bj->b", x, a, x)
            better = ok & (q < best)
            best = np.where(better, q, best)
            best_x[better] = x[better]
    return best, best_x


@lru_cache(maxsize=8)
def _compositions(n, resolution):
    """All nonnegative integer vectors of length n summing to resolution."""
    prefix = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for _ in range(n - 1):
        counts = resolution - sums + 1
        starts = np.cumsum(counts) - counts
        digit = np.arange(counts.sum()) - np.repeat(starts, counts)
        prefix = np.column_stack([np.repeat(prefix, counts, axis=0), digit])
        sums = np.repeat(sums, counts) + digit
    out = np.column_stack([prefix, resolution - sums])
    out.setflags(write=False)
    return out


@lru_cache(maxsize=2)
def _grid_points(n, resolution):
    pts = _compositions(n, resolution) / resolution
    pts.setflags(write=False)
    return pts


def simplex_grid_min(a, resolution, chunk=1 << 18):
    a = np.asarray(a, dtype=float)
    pts = _grid_points(a.shape[0], int(resolution))
    best, best_x = np.inf, None
    for start in range(0, len(pts), chunk):
        x = pts[start:start + chunk]
        q = np.sum((x @ a) * x, axis=1)
        i = int(np.argmin(q))
        if q[i] < best:
            best, best_x = float(q[i]), x[i].copy()
    return best, best_x
