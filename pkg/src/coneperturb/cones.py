"""Concrete cone families.

A point is a numpy array whose trailing axes match the cone's
``ambient_shape``: a coordinate vector, a symmetric matrix, or the node values
of a piecewise-linear grid function. Any extra leading axes are a batch, and
``margin`` is vectorised over them.

Membership is summarised by one signed scalar, the *margin*, which is
positive on the interior, zero on the boundary and negative outside. The
lexicographic cone is not closed, so it uses exact sign rules instead.
"""

import json
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import (
    BudgetExhausted,
    ConfigError,
    DimensionTooLarge,
    EmptyRegion,
    NotExterior,
    PreconditionViolated,
    ShapeMismatch,
    TotalOrder,
    Unsupported,
)
from .functionals import (
    Combination,
    CPForm,
    DenseCovector,
    LexFirstCoord,
    PointEvaluation,
    Scaled,
    SpinDual,
    TraceForm,
    TrapezoidIntegral,
    _fmt,
)

DEFAULT_TOL = 1e-9
# Exterior samples are drawn well clear of the boundary.
EXTERIOR_GAP = 1e-6


class Region(str, Enum):
    CONE = "cone"
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class Membership(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class MembershipVerdict:
    region: Membership
    margin: float


class Separator(NamedTuple):
    functional: object
    value: float
    exact: bool


def _unit(shape, index):
    e = np.zeros(shape)
    e[index] = 1.0
    return e


class Cone:
    ambient_shape = ()
    closed = True

    @property
    def has_interior(self):
        return True

    @property
    def span_dim(self):
        return int(np.prod(self.ambient_shape))

    # -- shapes ---------------------------------------------------------
    def check(self, p):
        p = np.asarray(p, dtype=float)
        k = len(self.ambient_shape)
        if p.ndim < k or p.shape[p.ndim - k:] != self.ambient_shape:
            raise ShapeMismatch(f"{self.to_text()} expects points of shape {self.ambient_shape}, got {p.shape}")
        return p

    def batch_shape(self, p):
        return p.shape[: p.ndim - len(self.ambient_shape)]

    def point_norm(self, p):
        """Max-abs norm over the ambient axes."""
        p = self.check(p)
        axes = tuple(range(p.ndim - len(self.ambient_shape), p.ndim))
        out = np.max(np.abs(p), axis=axes)
        return float(out) if np.ndim(out) == 0 else out

    def zeros(self):
        return np.zeros(self.ambient_shape)

    # -- membership -----------------------------------------------------
    def margin(self, p):
        out = self._margin(self.check(p))
        return float(out) if np.ndim(out) == 0 else out

    def _margin(self, p):
        raise NotImplementedError

    def memberships(self, p, tol=DEFAULT_TOL):
        """Classify a batch; returns a flat list of ``Membership``."""
        m = np.atleast_1d(self.margin(p)).ravel()
        top = Membership.INTERIOR if self.has_interior else Membership.BOUNDARY
        return [top if v > tol else Membership.EXTERIOR if v < -tol else Membership.BOUNDARY for v in m]

    def classify(self, p, tol=DEFAULT_TOL):
        if tol <= 0:
            raise ValueError("tol must be positive")
        p = self.check(p)
        if self.batch_shape(p):
            raise ShapeMismatch("classify takes a single point")
        return MembershipVerdict(self.memberships(p, tol)[0], self.margin(p))

    def leq(self, x, y, tol=DEFAULT_TOL):
        """Cone order: ``x <= y`` iff ``y - x`` lies in the cone (to within ``tol``)."""
        d = self.check(y) - self.check(x)
        return np.asarray(self.margin(d)) >= -tol if self.batch_shape(d) else self.margin(d) >= -tol

    # -- sampling -------------------------------------------------------
    def sample(self, region, rng, size=None):
        """Sample from ``region``; a single point if ``size`` is None, else a batch."""
        region = Region(region)
        k = 1 if size is None else int(size)
        if region is Region.EXTERIOR:
            pts = self._sample_exterior(rng, k)
        else:
            pts = self._sample(region, rng, k)
        return pts[0] if size is None else pts

    def _sample(self, region, rng, k):
        raise NotImplementedError

    def _sample_exterior(self, rng, k):
        out = []
        have = 0
        for _ in range(10_000):
            cand = self.random_point(rng, max(2 * k, 16))
            keep = cand[np.asarray(self.margin(cand)) < -EXTERIOR_GAP]
            out.append(keep)
            have += len(keep)
            if have >= k:
                return np.concatenate(out)[:k]
        raise EmptyRegion(f"rejection sampling found no exterior points of {self.to_text()}")

    def random_point(self, rng, size):
        return rng.standard_normal((size, *self.ambient_shape))

    def sample_members(self, rng, size):
        """Cone members biased toward the boundary, where positivity failures live."""
        half = size // 2
        return np.concatenate([self.sample(Region.CONE, rng, size - half),
                               self.sample(Region.BOUNDARY, rng, half)])

    def unit(self):
        """A fixed reference member; interior whenever the interior is nonempty."""
        raise NotImplementedError

    # -- duality --------------------------------------------------------
    def sample_dual(self, rng):
        """A random nonzero functional of the dual cone, self-checked on fresh samples."""
        f = self._sample_dual(rng)
        ok, worst = self.check_dual(f, rng)
        if not ok:  # pragma: no cover - would be a construction bug
            raise AssertionError(f"sampled dual functional is negative on the cone ({worst})")
        return f

    def _sample_dual(self, rng):
        raise NotImplementedError

    def check_dual(self, f, rng, samples=1000, tol=1e-10):
        """Sampled test of ``f >= 0`` on the cone; returns ``(ok, worst value)``."""
        pts = self.sample_members(rng, samples)
        pts = np.concatenate([pts, np.stack(self.extremal_candidates() or [self.unit()])])
        vals = np.asarray(f.eval(pts))
        worst = float(vals.min())
        return worst >= -tol, worst

    def supporting_functional(self, p):
        """A dual functional whose value at ``p`` is (close to) the margin of ``p``."""
        raise NotImplementedError

    def separating_functional(self, p):
        p = self.check(p)
        if self.classify(p, DEFAULT_TOL).region is not Membership.EXTERIOR:
            raise NotExterior("separating functional needs an exterior point")
        return self.supporting_functional(p)

    # -- extremals ------------------------------------------------------
    def is_extremal(self, p, tol=DEFAULT_TOL):
        p = self.check(p)
        if self.classify(p, tol).region is Membership.EXTERIOR:
            raise PreconditionViolated("is_extremal needs a cone member")
        return self._is_extremal(p, tol)

    def _is_extremal(self, p, tol):
        raise Unsupported(f"no extremal test for {self.to_text()}")

    def extremal_candidates(self):
        """Deterministic list of extremal members (empty when unknown)."""
        return []

    def boundary_candidates(self):
        """Deterministic list of nonzero boundary members."""
        return self.extremal_candidates()

    def boundary_candidates_for(self, f):
        """Boundary candidates ordered for a search that wants ``f > 0``."""
        return self.boundary_candidates()

    def sample_extremal(self, rng, size):
        """Random extremal members, shape ``(size, *ambient_shape)``."""
        raise Unsupported(f"no extremal sampler for {self.to_text()}")

    # -- incomparable elements ------------------------------------------
    def find_incomparable(self, rng, budget=1000):
        """A point ``p`` with neither ``p >= 0`` nor ``p <= 0``."""
        if self.span_dim < 2 and int(np.prod(self.ambient_shape)) < 2:
            raise TotalOrder("a one-dimensional space is totally ordered")
        for p in self._incomparable_fallbacks():
            if self._incomparable(p):
                return p
        for _ in range(budget):
            p = self.random_point(rng, 1)[0]
            if self._incomparable(p):
                return p
        raise BudgetExhausted("no incomparable element found within budget")

    def _incomparable(self, p):
        ext = Membership.EXTERIOR
        return (self.classify(p).region is ext) and (self.classify(-p).region is ext)

    def _incomparable_fallbacks(self):
        return []

    def dual_zero_pair(self):
        """A member ``u != 0`` and dual functional ``f != 0`` with ``f(u) = 0``."""
        raise Unsupported(f"no explicit dual-zero pair for {self.to_text()}")

    def to_text(self):
        raise NotImplementedError

    def __str__(self):
        return self.to_text()


class Orthant(Cone):
    def __init__(self, n):
        if int(n) < 1:
            raise ValueError("dimension must be positive")
        self.n = int(n)
        self.ambient_shape = (self.n,)

    def _margin(self, p):
        return p.min(axis=-1)

    def _sample(self, region, rng, k):
        z = np.abs(rng.standard_normal((k, *self.ambient_shape)))
        if region is Region.INTERIOR:
            return z + 1e-3
        if region is Region.BOUNDARY:
            return _zero_some(z, rng)
        return z

    def _sample_dual(self, rng):
        return DenseCovector(np.abs(rng.standard_normal(self.ambient_shape)) + 1e-3)

    def supporting_functional(self, p):
        i = int(np.argmin(p))
        return Separator(DenseCovector(_unit(self.ambient_shape, i)), float(p[i]), True)

    def _is_extremal(self, p, tol):
        return int(np.sum(p > tol)) == 1

    def extremal_candidates(self):
        return [_unit(self.ambient_shape, i) for i in range(self.ambient_shape[0])]

    def sample_extremal(self, rng, size):
        n = self.ambient_shape[0]
        out = np.zeros((size, n))
        out[np.arange(size), rng.integers(0, n, size)] = np.abs(rng.standard_normal(size)) + 1e-3
        return out

    def boundary_candidates(self):
        return self.extremal_candidates() if self.ambient_shape[0] > 1 else []

    def _incomparable_fallbacks(self):
        if self.ambient_shape[0] < 2:
            return []
        return [_unit(self.ambient_shape, 0) - _unit(self.ambient_shape, 1)]

    def dual_zero_pair(self):
        if self.ambient_shape[0] < 2:
            raise Unsupported("dual-zero pair needs dimension >= 2")
        return _unit(self.ambient_shape, 0), DenseCovector(_unit(self.ambient_shape, 1))

    def unit(self):
        return np.ones(self.ambient_shape)

    def to_text(self):
        return f"orthant:{self.n}"


class GridNonneg(Orthant):
    """Nonnegative piecewise-linear functions on a grid, stored by node values.

    Nodewise nonnegativity is exact for this class of functions. Extremals
    here are the node hat functions of the discretised cone; the continuous
    cone of nonnegative functions has none.
    """

    def __init__(self, nodes):
        t = np.asarray(nodes, dtype=float)
        if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0) or not np.all(np.isfinite(t)):
            raise ValueError("grid nodes must be finite, strictly increasing, at least two")
        self.nodes = t
        self.n = t.size
        self.ambient_shape = (t.size,)

    def _sample_dual(self, rng):
        picks = rng.choice(self.n, size=min(2, self.n), replace=False)
        terms = [(float(np.abs(rng.standard_normal()) + 1e-3), TrapezoidIntegral(self.nodes))]
        terms += [(float(np.abs(rng.standard_normal())), PointEvaluation(self.nodes, i)) for i in sorted(picks)]
        return Combination(terms)

    def supporting_functional(self, p):
        i = int(np.argmin(p))
        return Separator(PointEvaluation(self.nodes, i), float(p[i]), True)

    def dual_zero_pair(self):
        return _unit(self.ambient_shape, 0), PointEvaluation(self.nodes, self.n - 1)

    @property
    def symmetric(self):
        return bool(np.allclose(self.nodes - self.nodes[0], (self.nodes[-1] - self.nodes)[::-1], atol=1e-12))

    def to_text(self):
        return "grid:" + _fmt(self.nodes)


def _zero_some(z, rng):
    """Zero a random nonempty proper subset of coordinates in each row (all of them if n == 1)."""
    k, n = z.shape
    if n == 1:
        return np.zeros_like(z)
    nzero = rng.integers(1, n, size=k)
    ranks = np.argsort(rng.random((k, n)), axis=1).argsort(axis=1)
    return np.where(ranks < nzero[:, None], 0.0, z)


class Lorentz(Cone):
    """``{(x, alpha) : alpha >= ||x||}`` in ``R^(d+1)``; the last coordinate is ``alpha``."""

    def __init__(self, d):
        if int(d) < 1:
            raise ValueError("dimension must be positive")
        self.d = int(d)
        self.ambient_shape = (self.d + 1,)

    def _margin(self, p):
        return p[..., -1] - np.linalg.norm(p[..., :-1], axis=-1)

    def _sample(self, region, rng, k):
        x = rng.standard_normal((k, self.d))
        r = np.linalg.norm(x, axis=1)
        if region is Region.BOUNDARY:
            alpha = r
        else:
            alpha = r + np.abs(rng.standard_normal(k)) + (1e-3 if region is Region.INTERIOR else 0.0)
        return np.column_stack([x, alpha])

    def _sample_dual(self, rng):
        direction = rng.standard_normal(self.d)
        direction /= np.linalg.norm(direction)
        xhat = direction * rng.random() ** (1.0 / self.d)
        return Scaled(0.5 + 1.5 * rng.random(), SpinDual(xhat))

    def supporting_functional(self, p):
        x, alpha = p[:-1], p[-1]
        nx = float(np.linalg.norm(x))
        xhat = -x / nx if nx > 0 else np.zeros(self.d)
        return Separator(SpinDual(xhat), alpha - nx, True)

    def _is_extremal(self, p, tol):
        return abs(self.margin(p)) <= tol and float(np.linalg.norm(p)) > tol

    def sample_extremal(self, rng, size):
        return self._sample(Region.BOUNDARY, rng, size)

    def boundary_candidates_for(self, f):
        # (w/|w|, 1) maximises a functional with weights (w, c) on the unit-height slice
        w = np.asarray(f.weights)[:-1]
        nw = float(np.linalg.norm(w))
        lead = [np.append(w / nw, 1.0)] if nw > 0 else []
        return lead + self.boundary_candidates()

    def extremal_candidates(self):
        out = []
        for i in range(self.d):
            for sign in (1.0, -1.0):
                e = np.zeros(self.ambient_shape)
                e[i] = sign
                e[-1] = 1.0
                out.append(e)
        return out

    def _incomparable_fallbacks(self):
        return [_unit(self.ambient_shape, 0)]

    def dual_zero_pair(self):
        u = np.zeros(self.ambient_shape)
        u[0] = u[-1] = 1.0
        return u, SpinDual(-_unit((self.d,), 0))

    def unit(self):
        return _unit(self.ambient_shape, -1)

    def to_text(self):
        return f"lorentz:{self.d}"


class _MatrixCone(Cone):
    def __init__(self, n):
        if int(n) < 1:
            raise ValueError("dimension must be positive")
        self.n = int(n)
        self.ambient_shape = (self.n, self.n)

    @property
    def span_dim(self):
        return self.n * (self.n + 1) // 2

    def random_point(self, rng, size):
        g = rng.standard_normal((size, self.n, self.n))
        return (g + np.swapaxes(g, -1, -2)) / 2

    def _gram(self, rng, k, rank):
        g = rng.standard_normal((k, self.n, rank))
        return g @ np.swapaxes(g, -1, -2)

    def boundary_candidates(self):
        if self.n < 2:
            return []
        return [np.outer(e, e) for e in np.eye(self.n)]

    def _incomparable_fallbacks(self):
        if self.n < 2:
            return []
        d = np.zeros(self.n)
        d[0], d[1] = 1.0, -1.0
        return [np.diag(d)]

    def unit(self):
        return np.eye(self.n)


class Psd(_MatrixCone):
    def _margin(self, p):
        return numerics.eigvalsh_batch(p)[..., 0]

    def _sample(self, region, rng, k):
        if region is Region.BOUNDARY:
            return self._gram(rng, k, self.n - 1)
        a = self._gram(rng, k, self.n)
        return a + 0.01 * np.eye(self.n) if region is Region.INTERIOR else a

    def _sample_dual(self, rng):
        return TraceForm(self._gram(rng, 1, self.n)[0])

    def supporting_functional(self, p):
        eig = numerics.sym_eig(p)
        v = eig.eigenvectors[:, 0]
        return Separator(TraceForm(np.outer(v, v)), float(eig.eigenvalues[0]), True)

    def _is_extremal(self, p, tol):
        w = numerics.sym_eig(p).eigenvalues
        if w[-1] <= tol:
            return False
        return self.n == 1 or w[-2] <= tol * w[-1]

    def extremal_candidates(self):
        return [np.outer(e, e) for e in np.eye(self.n)]

    def sample_extremal(self, rng, size):
        v = rng.standard_normal((size, self.n))
        return v[:, :, None] * v[:, None, :]

    def dual_zero_pair(self):
        if self.n < 2:
            raise Unsupported("dual-zero pair needs n >= 2")
        e = np.eye(self.n)
        return np.outer(e[0], e[0]), TraceForm(np.outer(e[1], e[1]))

    def to_text(self):
        return f"psd:{self.n}"


class Copositive(_MatrixCone):
    """Copositive matrices; the margin is the minimum of ``x^T A x`` over the simplex.

    Samples of the cone are sums of a PSD and an entrywise nonnegative matrix,
    which covers the whole cone only for n <= 4. Boundary and exterior samples
    shift a random symmetric matrix along the all-ones matrix ``J``, which
    moves the margin by exactly the shift because ``x^T J x = 1`` on the simplex.
    """

    def __init__(self, n):
        super().__init__(n)
        if self.n > numerics.MAX_SIMPLEX_DIM:
            raise DimensionTooLarge(f"copositive cone limited to n <= {numerics.MAX_SIMPLEX_DIM}")

    def _margin(self, p):
        return numerics.simplex_min_batch(p)[0]

    def _sample(self, region, rng, k):
        ones = np.ones(self.ambient_shape)
        if region is Region.BOUNDARY:
            a = self.random_point(rng, k)
            return a - np.asarray(self.margin(a))[:, None, None] * ones
        g = np.abs(rng.standard_normal((k, self.n, self.n)))
        a = self._gram(rng, k, self.n) + (g + np.swapaxes(g, -1, -2)) / 2
        return a + 0.01 * ones if region is Region.INTERIOR else a

    def _sample_exterior(self, rng, k):
        a = self.random_point(rng, k)
        shift = np.asarray(self.margin(a)) + np.abs(rng.standard_normal(k)) + 1e-3
        return a - shift[:, None, None] * np.ones(self.ambient_shape)

    def _sample_dual(self, rng):
        k = int(rng.integers(1, self.n + 2))
        return CPForm(np.abs(rng.standard_normal((k, self.n))))

    def supporting_functional(self, p):
        res = numerics.simplex_quadratic_min(p)
        return Separator(CPForm(res.argmin[None, :]), res.value, True)

    def _is_extremal(self, p, tol):
        raise Unsupported("no tractable extremal test for the copositive cone")

    def to_text(self):
        return f"copositive:{self.n}"


class Lexicographic(Cone):
    """``{(x, y) : x > 0, or x = 0 and y >= 0}``. Not closed; every test is an exact sign rule."""

    ambient_shape = (2,)
    closed = False

    def _margin(self, p):
        x, y = p[..., 0], p[..., 1]
        outside = -np.maximum(np.abs(x), np.abs(y))
        return np.where(x > 0, 1.0, np.where((x == 0) & (y >= 0), 0.0, outside))

    def memberships(self, p, tol=DEFAULT_TOL):
        m = np.atleast_1d(self.margin(p)).ravel()
        return [Membership.INTERIOR if v > 0 else Membership.EXTERIOR if v < 0 else Membership.BOUNDARY for v in m]

    def leq(self, x, y, tol=DEFAULT_TOL):
        d = self.check(y) - self.check(x)
        out = np.asarray(self.margin(d)) >= 0
        return out if out.ndim else bool(out)

    def _sample(self, region, rng, k):
        a = np.abs(rng.standard_normal(k))
        b = rng.standard_normal(k)
        if region is Region.INTERIOR:
            return np.column_stack([a + 1e-3, b])
        if region is Region.BOUNDARY:
            return np.column_stack([np.zeros(k), np.abs(b)])
        on_axis = rng.random(k) < 0.5
        return np.column_stack([np.where(on_axis, 0.0, a + 1e-3), np.where(on_axis, np.abs(b), b)])

    def _sample_exterior(self, rng, k):
        a = np.abs(rng.standard_normal(k)) + 1e-3
        b = rng.standard_normal(k)
        on_axis = rng.random(k) < 0.5
        return np.column_stack([np.where(on_axis, 0.0, -a), np.where(on_axis, -a, b)])

    def _sample_dual(self, rng):
        return Scaled(0.5 + 1.5 * rng.random(), LexFirstCoord())

    def supporting_functional(self, p):
        # x = 0, y < 0 cannot be strictly separated: the dual cone is {c (1, 0)}.
        return Separator(LexFirstCoord(), float(p[0]), bool(p[0] < 0))

    def _is_extremal(self, p, tol):
        return bool(p[0] == 0 and p[1] >= 0)

    def extremal_candidates(self):
        return [np.array([0.0, 1.0])]

    def sample_extremal(self, rng, size):
        return np.column_stack([np.zeros(size), np.abs(rng.standard_normal(size)) + 1e-3])

    def find_incomparable(self, rng, budget=1000):
        raise TotalOrder("the lexicographic order is total: K and -K cover the plane")

    def unit(self):
        return np.array([1.0, 0.0])

    def to_text(self):
        return "lex"


class Ray(Cone):
    """``{lambda d : lambda >= 0}`` for a unit vector ``d``; empty interior when n >= 2."""

    def __init__(self, n, direction):
        d = np.asarray(direction, dtype=float)
        if d.shape != (int(n),):
            raise ShapeMismatch(f"ray direction must have length {n}")
        if abs(np.linalg.norm(d) - 1.0) > 1e-12:
            raise ValueError("ray direction must have unit norm")
        self.n = int(n)
        self.direction = d
        self.ambient_shape = (self.n,)

    @property
    def has_interior(self):
        return self.n == 1

    @property
    def span_dim(self):
        return 1

    def _split(self, p):
        c = p @ self.direction
        off = np.linalg.norm(p - c[..., None] * self.direction, axis=-1)
        return c, off

    def _margin(self, p):
        c, off = self._split(p)
        return np.where(off <= 1e-9, c, -off)

    def _sample(self, region, rng, k):
        if region is Region.INTERIOR and not self.has_interior:
            raise EmptyRegion("a ray in dimension >= 2 has empty interior")
        lam = np.abs(rng.standard_normal(k)) + (1e-3 if region is Region.INTERIOR else 0.0)
        return lam[:, None] * self.direction

    def _sample_dual(self, rng):
        w = rng.standard_normal(self.n)
        c = w @ self.direction
        if c < 0:
            w = w - 2 * c * self.direction
        return DenseCovector(w)

    def supporting_functional(self, p):
        c, off = self._split(p)
        if off > 1e-9:
            o = p - c * self.direction
            return Separator(DenseCovector(-o / off), -float(off), True)
        return Separator(DenseCovector(self.direction.copy()), float(c), True)

    def _is_extremal(self, p, tol):
        return float(np.linalg.norm(p)) > tol

    def extremal_candidates(self):
        return [self.direction.copy()]

    def sample_extremal(self, rng, size):
        return self._sample(Region.CONE, rng, size) + 1e-3 * self.direction

    def _incomparable_fallbacks(self):
        if self.n < 2:
            return []
        e = np.zeros(self.n)
        e[int(np.argmin(np.abs(self.direction)))] = 1.0
        o = e - (e @ self.direction) * self.direction
        return [o / np.linalg.norm(o)]

    def find_incomparable(self, rng, budget=1000):
        if self.n < 2:
            raise TotalOrder("a one-dimensional space is totally ordered")
        return super().find_incomparable(rng, budget)

    def unit(self):
        return self.direction.copy()

    def to_text(self):
        return f"ray:{self.n}:" + _fmt(self.direction)


def parse_cone(text):
    """Parse the canonical text form, e.g. ``orthant:4``, ``ray:3:[1,0,0]``, ``grid:[0,0.5,1]``."""
    text = text.strip()
    head, _, rest = text.partition(":")
    head = head.lower()
    try:
        if head == "orthant":
            return Orthant(int(rest))
        if head == "lorentz":
            return Lorentz(int(rest))
        if head == "psd":
            return Psd(int(rest))
        if head == "copositive":
            return Copositive(int(rest))
        if head in ("lex", "lexicographic") and not rest:
            return Lexicographic()
        if head == "ray":
            n, _, vec = rest.partition(":")
            return Ray(int(n), json.loads(vec))
        if head == "grid":
            return GridNonneg(json.loads(rest))
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad cone spec {text!r}: {exc}") from exc
    raise ConfigError(f"unknown cone spec {text!r}")
