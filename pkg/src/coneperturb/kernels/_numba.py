"""JIT-compiled kernels. Same algorithms as ``_numpy``, written as scalar loops."""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def _jacobi_inplace(a, v, rel_tol, max_sweeps, vectors):
    n = a.shape[0]
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += a[i, j] * a[i, j]
    thresh = rel_tol * np.sqrt(norm)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if np.sqrt(off) <= thresh:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                if vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq


@nb.njit(cache=True)
def eigh_batch(mats, rel_tol=1e-14, max_sweeps=100, vectors=True):
    b, n, _ = mats.shape
    w = np.empty((b, n))
    vecs = np.zeros((b, n, n))
    a = np.empty((n, n))
    v = np.empty((n, n))
    for k in range(b):
        for i in range(n):
            for j in range(n):
                a[i, j] = mats[k, i, j]
                v[i, j] = 1.0 if i == j else 0.0
        _jacobi_inplace(a, v, rel_tol, max_sweeps, vectors)
        d = np.empty(n)
        for i in range(n):
            d[i] = a[i, i]
        order = np.argsort(d, kind="mergesort")
        for i in range(n):
            w[k, i] = d[order[i]]
            if vectors:
                for r in range(n):
                    vecs[k, r, i] = v[r, order[i]]
    return w, vecs


@nb.njit(cache=True)
def _solve_inplace(m, rhs, size, pivot_tol):
    # Gaussian elimination with partial pivoting on the leading size x size block.
    for col in range(size):
        piv = col
        best = abs(m[col, col])
        for r in range(col + 1, size):
            if abs(m[r, col]) > best:
                best = abs(m[r, col])
                piv = r
        if best < pivot_tol:
            return False
        if piv != col:
            for c in range(size):
                tmp = m[col, c]
                m[col, c] = m[piv, c]
                m[piv, c] = tmp
            tmp = rhs[col]
            rhs[col] = rhs[piv]
            rhs[piv] = tmp
        for r in range(col + 1, size):
            factor = m[r, col] / m[col, col]
            if factor != 0.0:
                for c in range(col, size):
                    m[r, c] -= factor * m[col, c]
                rhs[r] -= factor * rhs[col]
    for r in range(size - 1, -1, -1):
        acc = rhs[r]
        for c in range(r + 1, size):
            acc -= m[r, c] * rhs[c]
        rhs[r] = acc / m[r, r]
    return True


@nb.njit(cache=True)
def _simplex_min_one(a, pivot_tol, feas_tol):
    n = a.shape[0]
    best = np.inf
    best_x = np.zeros(n)
    m = np.zeros((n + 1, n + 1))
    rhs = np.zeros(n + 1)
    idx = np.zeros(n, dtype=np.int64)
    x = np.zeros(n)
    for mask in range(1, 1 << n):
        k = 0
        for i in range(n):
            if (mask >> i) & 1:
                idx[k] = i
                k += 1
        for r in range(k):
            for c in range(k):
                m[r, c] = a[idx[r], idx[c]]
            m[r, k] = -1.0
            rhs[r] = 0.0
        for c in range(k):
            m[k, c] = 1.0
        m[k, k] = 0.0
        rhs[k] = 1.0
        if not _solve_inplace(m, rhs, k + 1, pivot_tol):
            continue
        feasible = True
        for r in range(k):
            if rhs[r] < -feas_tol:
                feasible = False
                break
        if not feasible:
            continue
        total = 0.0
        for i in range(n):
            x[i] = 0.0
        for r in range(k):
            val = rhs[r] if rhs[r] > 0.0 else 0.0
            x[idx[r]] = val
            total += val
        if total <= 0.0:
            continue
        for i in range(n):
            x[i] /= total
        q = 0.0
        for i in range(n):
            if x[i] != 0.0:
                for j in range(n):
                    q += x[i] * a[i, j] * x[j]
        if q < best:
            best = q
            for i in range(n):
                best_x[i] = x[i]
    return best, best_x


@nb.njit(cache=True)
def simplex_min_batch(mats, pivot_tol=1e-12, feas_tol=1e-12):
    b, n, _ = mats.shape
    vals = np.empty(b)
    args = np.empty((b, n))
    for k in range(b):
        amax = 1.0
        for i in range(n):
            for j in range(n):
                if abs(mats[k, i, j]) > amax:
                    amax = abs(mats[k, i, j])
        vals[k], args[k] = _simplex_min_one(mats[k], pivot_tol * amax, feas_tol)
    return vals, args


@nb.njit(cache=True)
def simplex_grid_min(a, resolution):
    n = a.shape[0]
    if n == 1:
        return a[0, 0], np.ones(1)
    h = 1.0 / resolution
    m = n - 2
    digits = np.zeros(max(m, 1), dtype=np.int64)
    best = np.inf
    best_x = np.zeros(n)
    aa, ab, bb = a[n - 2, n - 2], a[n - 2, n - 1], a[n - 1, n - 1]
    s = 0
    while True:
        # prefix (first n-2 coordinates) fixed; sweep the last two exactly
        pre = 0.0
        lin_a = 0.0
        lin_b = 0.0
        for i in range(m):
            xi = digits[i] * h
            if xi != 0.0:
                for j in range(m):
                    pre += xi * a[i, j] * digits[j] * h
                lin_a += xi * a[i, n - 2]
                lin_b += xi * a[i, n - 1]
        r = resolution - s
        for k in range(r + 1):
            xa = k * h
            xb = (r - k) * h
            q = pre + 2.0 * (lin_a * xa + lin_b * xb) + aa * xa * xa + 2.0 * ab * xa * xb + bb * xb * xb
            if q < best:
                best = q
                for i in range(m):
                    best_x[i] = digits[i] * h
                best_x[n - 2] = xa
                best_x[n - 1] = xb
        if m == 0:
            break
        # odometer over the prefix digits with digit sum <= resolution
        i = m - 1
        while i >= 0:
            if s < resolution:
                digits[i] += 1
                s += 1
                break
            s -= digits[i]
            digits[i] = 0
            i -= 1
        if i < 0:
            break
    return best, best_x
