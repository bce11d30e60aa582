"""Linear maps on a cone's ambient space and the rank-one perturbation.

``RankOnePerturbed(S, f, u)`` acts as ``x -> S x + f(x) u``. When ``S`` is an
automorphism, ``f`` is a positive functional and ``u`` lies in the cone, the
map is positive and invertible. Its inverse is the closed form

    x = S^-1 y - lambda S^-1 u,   lambda = f(S^-1 y) / (1 + f(S^-1 u)),

and the denominator is at least 1.
"""

from dataclasses import dataclass, field

import numpy as np

from . import cones as _cones
from .errors import (
    NotAutomorphism,
    NotInCone,
    NotPositiveFunctional,
    ShapeMismatch,
    Unsupported,
)
from .functionals import (
    Composed,
    CPForm,
    DenseCovector,
    Functional,
    Scaled,
    SpinDual,
    TraceForm,
    _fmt,
)
from .rng import stream

INVERSE_TOL = 1e-9


class LinearMap:
    """Base class; ``shape`` is the ambient point shape the map acts on."""

    shape = ()
    has_inverse = True

    def _split(self, p):
        p = np.asarray(p, dtype=float)
        k = len(self.shape)
        if p.ndim < k or p.shape[p.ndim - k:] != tuple(self.shape):
            raise ShapeMismatch(f"map on {self.shape} applied to point of shape {p.shape}")
        return p

    def apply(self, p):
        return self._apply(self._split(p))

    __call__ = apply

    def apply_inverse(self, y):
        if not self.has_inverse:
            raise Unsupported(f"{type(self).__name__} has no closed-form inverse")
        return self._apply_inverse(self._split(y))

    def inverse(self):
        if not self.has_inverse:
            raise Unsupported(f"{type(self).__name__} has no closed-form inverse")
        return Inverse(self)

    def matrix(self):
        """Matrix of the map on flattened coordinates."""
        n = int(np.prod(self.shape))
        basis = np.eye(n).reshape(n, *self.shape)
        return self.apply(basis).reshape(n, n).T

    def to_text(self):
        return "dense:" + _fmt(self.matrix())

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"


class Identity(LinearMap):
    def __init__(self, shape):
        self.shape = tuple(shape)

    def _apply(self, p):
        return p.copy()

    _apply_inverse = _apply

    def to_text(self):
        return "identity"


class PermDiag(LinearMap):
    """``y_i = d_i x_{perm[i]}`` with ``d > 0``; ``perm`` is 0-based here, 1-based in text."""

    def __init__(self, perm, diag):
        self.perm = np.asarray(perm, dtype=np.int64)
        self.diag = np.asarray(diag, dtype=float)
        n = self.perm.size
        if self.diag.shape != (n,) or sorted(self.perm.tolist()) != list(range(n)):
            raise ValueError("permdiag needs a permutation and a diagonal of the same length")
        if np.any(self.diag <= 0) or not np.all(np.isfinite(self.diag)):
            raise ValueError("permdiag diagonal entries must be positive")
        self.shape = (n,)
        self._inv_perm = np.argsort(self.perm)

    def _apply(self, p):
        return self.diag * p[..., self.perm]

    def _apply_inverse(self, y):
        return (y / self.diag)[..., self._inv_perm]

    def to_text(self):
        perm = ",".join(str(i + 1) for i in self.perm)
        return f"permdiag:({perm}):({','.join(repr(float(d)) for d in self.diag)})"


class SpinAuto(LinearMap):
    """``(x, alpha) -> rho (Q x, alpha)`` with ``Q`` orthogonal and ``rho > 0``."""

    def __init__(self, q, rho):
        self.q = np.atleast_2d(np.asarray(q, dtype=float))
        self.rho = float(rho)
        d = self.q.shape[0]
        if self.q.shape != (d, d):
            raise ShapeMismatch("spin automorphism needs a square block")
        if np.max(np.abs(self.q.T @ self.q - np.eye(d))) > 1e-10:
            raise ValueError("spin automorphism block must be orthogonal")
        if not self.rho > 0:
            raise ValueError("spin automorphism scale must be positive")
        self.shape = (d + 1,)

    def _apply(self, p):
        out = np.empty_like(p)
        out[..., :-1] = self.rho * (p[..., :-1] @ self.q.T)
        out[..., -1] = self.rho * p[..., -1]
        return out

    def _apply_inverse(self, y):
        out = np.empty_like(y)
        out[..., :-1] = (y[..., :-1] @ self.q) / self.rho
        out[..., -1] = y[..., -1] / self.rho
        return out

    def to_text(self):
        return f"spinauto:{_fmt(self.q)}:{self.rho!r}"


class Congruence(LinearMap):
    """``A -> M A M^T``; ``m_inv`` is the exact inverse when the caller knows it."""

    def __init__(self, m, m_inv=None):
        self.m = np.atleast_2d(np.asarray(m, dtype=float))
        n = self.m.shape[0]
        if self.m.shape != (n, n):
            raise ShapeMismatch("congruence needs a square matrix")
        if abs(np.linalg.det(self.m)) < 1e-9:
            raise ValueError("congruence matrix must be invertible (|det| >= 1e-9)")
        self.m_inv = np.linalg.inv(self.m) if m_inv is None else np.asarray(m_inv, dtype=float)
        self.shape = (n, n)

    def _apply(self, p):
        return self.m @ p @ self.m.T

    def _apply_inverse(self, y):
        return self.m_inv @ y @ self.m_inv.T

    def to_text(self):
        return "congruence:" + _fmt(self.m)


class Dense(LinearMap):
    """Arbitrary matrix on flattened coordinates; invertible only if an inverse is supplied."""

    def __init__(self, a, shape=None, inverse=None):
        self.a = np.atleast_2d(np.asarray(a, dtype=float))
        n = self.a.shape[0]
        if self.a.shape != (n, n):
            raise ShapeMismatch("dense map needs a square matrix")
        self.shape = (n,) if shape is None else tuple(shape)
        if int(np.prod(self.shape)) != n:
            raise ShapeMismatch("dense map size does not match the point shape")
        self.inv = None if inverse is None else np.asarray(inverse, dtype=float)
        self.has_inverse = self.inv is not None

    def _flat(self, p, mat):
        lead = p.shape[: p.ndim - len(self.shape)]
        return (p.reshape(*lead, -1) @ mat.T).reshape(p.shape)

    def _apply(self, p):
        return self._flat(p, self.a)

    def _apply_inverse(self, y):
        return self._flat(y, self.inv)

    def matrix(self):
        return self.a.copy()

    def to_text(self):
        return "dense:" + _fmt(self.a)


class Inverse(LinearMap):
    def __init__(self, inner):
        self.inner = inner
        self.shape = inner.shape

    def _apply(self, p):
        return self.inner.apply_inverse(p)

    def _apply_inverse(self, y):
        return self.inner.apply(y)


class Composition(LinearMap):
    """``first`` then ``second``: ``p -> second(first(p))``."""

    def __init__(self, second, first):
        if tuple(second.shape) != tuple(first.shape):
            raise ShapeMismatch("composed maps act on different shapes")
        self.second, self.first = second, first
        self.shape = first.shape
        self.has_inverse = first.has_inverse and second.has_inverse

    def _apply(self, p):
        return self.second.apply(self.first.apply(p))

    def _apply_inverse(self, y):
        return self.first.apply_inverse(self.second.apply_inverse(y))


@dataclass(frozen=True)
class Hypotheses:
    """Which witness-theorem hypotheses hold for a constructed perturbation."""

    u_interior: bool
    f_positive_on_extremal: bool
    u_off_extremal_ray: bool
    f_u_zero: bool
    extremal: object = field(default=None, compare=False, repr=False)

    def as_dict(self):
        return {"u_interior": self.u_interior, "f_positive_on_extremal": self.f_positive_on_extremal,
                "u_off_extremal_ray": self.u_off_extremal_ray, "f_u_zero": self.f_u_zero}


def _bcast(scalars, shape):
    return scalars.reshape(scalars.shape + (1,) * len(shape))


class RankOnePerturbed(LinearMap):
    """``x -> S x + f(x) u``."""

    def __init__(self, s, f, u, hypotheses=None, cone=None):
        self.s, self.f = s, f
        self.u = np.asarray(u, dtype=float)
        self.shape = tuple(s.shape)
        if tuple(f.shape) != self.shape or self.u.shape != self.shape:
            raise ShapeMismatch("S, f and u must share the ambient shape")
        self.has_inverse = s.has_inverse
        self.hypotheses = hypotheses
        self.cone = cone
        # set by scaled_family: T_n = S + n (f o S) u with base functional f
        self.scaling_n = None
        self.base_f = None
        self._s_inv_u = s.apply_inverse(self.u) if s.has_inverse else None
        self._denominator = 1.0 + f.eval(self._s_inv_u) if s.has_inverse else None

    def _apply(self, p):
        fp = np.asarray(self.f.eval(p))
        return self.s.apply(p) + _bcast(fp, self.shape) * self.u

    def _apply_inverse(self, y):
        v = y if isinstance(self.s, Identity) else self.s.apply_inverse(y)
        lam = np.asarray(self.f.eval(v)) / self._denominator
        return v - _bcast(lam, self.shape) * self._s_inv_u

    def to_text(self):
        return f"rankone({self.s.to_text()}; {self.f.to_text()}; {_fmt(self.u)})"


def apply(t, p):
    return t.apply(p)


def apply_inverse(t, y):
    return t.apply_inverse(y)


def pullback(f, s):
    """The functional ``p -> f(S p)``, kept in structured form where the structure allows."""
    if tuple(f.shape) != tuple(s.shape):
        raise ShapeMismatch("functional and map act on different shapes")
    if isinstance(s, Identity):
        return f
    if isinstance(f, Scaled):
        return Scaled(f.coef, pullback(f.inner, s))
    if isinstance(s, SpinAuto) and isinstance(f, SpinDual):
        return Scaled(s.rho, SpinDual(s.q.T @ f.xhat))
    if isinstance(s, Congruence):
        if isinstance(f, TraceForm):
            return TraceForm(s.m.T @ f.b @ s.m)
        if isinstance(f, CPForm):
            v = f.vectors @ s.m
            if np.all(v >= -1e-12):
                return CPForm(np.clip(v, 0.0, None))
        return DenseCovector(s.m.T @ f.weights @ s.m)
    if isinstance(s, (PermDiag, SpinAuto, Dense)):
        return DenseCovector((s.matrix().T @ f.weights.ravel()).reshape(f.shape))
    return Composed(f, s)


def _validation_rng(rng):
    return stream(0, "validate") if rng is None else rng


def check_automorphism(s, cone, rng=None, samples=1000, tol=1e-9):
    """Sampled check that ``S`` and ``S^-1`` both map the cone into itself."""
    if isinstance(s, Identity):
        return True
    rng = _validation_rng(rng)
    if not s.has_inverse:
        return False
    return bool(is_positive_map(s, cone, rng, samples, tol)) and bool(is_positive_map(s.inverse(), cone, rng, samples, tol))


def _hypotheses(s, f, u, cone, tol=1e-9):
    u_interior = cone.has_interior and cone.classify(u, tol).region is _cones.Membership.INTERIOR
    extremal = None
    for v in cone.extremal_candidates():
        if f.eval(v) > tol:
            extremal = v
            break
    off_ray = False
    if extremal is not None:
        sv = s.apply(extremal)
        su = np.asarray(u, float).ravel()
        svf = sv.ravel()
        coef = float(su @ svf) / float(svf @ svf)
        off_ray = not (coef >= 0 and np.max(np.abs(su - coef * svf)) <= tol * (1 + np.max(np.abs(su))))
    return Hypotheses(bool(u_interior), extremal is not None, bool(off_ray),
                      abs(f.eval(u)) <= tol, extremal)


def rank_one_perturb(s, f, u, cone, rng=None, samples=1000):
    """Validated construction of ``x -> S x + f(x) u``.

    Refuses when the perturbation would not be a positive invertible map
    (``u`` outside the cone, ``f`` not positive, ``S`` not an automorphism).
    The witness-theorem hypotheses are only recorded on ``.hypotheses``.
    """
    u = cone.check(u)
    if cone.batch_shape(u) or tuple(f.shape) != cone.ambient_shape or tuple(s.shape) != cone.ambient_shape:
        raise ShapeMismatch("S, f and u must match the cone's ambient shape")
    if cone.margin(u) < -1e-9 or cone.point_norm(u) <= 1e-9:
        raise NotInCone(f"u must be a nonzero member of {cone.to_text()} (margin {cone.margin(u):.3g})")
    rng = _validation_rng(rng)
    ok, worst = cone.check_dual(f, rng, samples)
    if f.norm() == 0 or not ok:
        raise NotPositiveFunctional(f"f is not a nonzero positive functional on {cone.to_text()} (worst {worst:.3g})")
    if not check_automorphism(s, cone, rng, samples):
        raise NotAutomorphism(f"S is not an automorphism of {cone.to_text()}")
    return RankOnePerturbed(s, f, u, _hypotheses(s, f, u, cone), cone)


def scaled_family(s, f, u, n, cone, rng=None, samples=1000):
    """``T_n = S + n (f o S) u``; with ``f(u) = 0`` its inverse is ``S^-1 x - n f(x) S^-1 u``."""
    if int(n) < 1:
        raise ValueError("n must be a positive integer")
    t = rank_one_perturb(s, Scaled(int(n), pullback(f, s)), u, cone, rng, samples)
    t.scaling_n, t.base_f = int(n), f
    return t


def _random_orthogonal(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


def sample_automorphism(cone, rng):
    """A random automorphism from a generator family of the cone's automorphism group."""
    if isinstance(cone, _cones.GridNonneg):
        n = cone.n
        perm = np.arange(n)[::-1] if cone.symmetric and rng.random() < 0.5 else np.arange(n)
        return PermDiag(perm, np.exp(rng.uniform(-1, 1, n)))
    if isinstance(cone, _cones.Orthant):
        n = cone.n
        return PermDiag(rng.permutation(n), np.exp(rng.uniform(-1, 1, n)))
    if isinstance(cone, _cones.Lorentz):
        return SpinAuto(_random_orthogonal(rng, cone.d), float(np.exp(rng.uniform(-1, 1))))
    if isinstance(cone, _cones.Psd):
        q1, q2 = _random_orthogonal(rng, cone.n), _random_orthogonal(rng, cone.n)
        sv = np.exp(rng.uniform(-0.5, 0.5, cone.n))
        return Congruence(q1 @ np.diag(sv) @ q2.T, q2 @ np.diag(1 / sv) @ q1.T)
    if isinstance(cone, _cones.Copositive):
        # monomial congruences P D are copositive automorphisms
        n = cone.n
        d = np.exp(rng.uniform(-0.5, 0.5, n))
        p = np.eye(n)[rng.permutation(n)]
        return Congruence(p * d, p.T / d[:, None])
    if isinstance(cone, _cones.Lexicographic):
        a, d = np.exp(rng.uniform(-1, 1, 2))
        c = float(rng.standard_normal())
        return Dense([[a, 0.0], [c, d]], inverse=[[1 / a, 0.0], [-c / (a * d), 1 / d]])
    if isinstance(cone, _cones.Ray):
        dhat = cone.direction
        lam = float(np.exp(rng.uniform(-1, 1)))
        w = 0.5 * rng.standard_normal(cone.n) / np.sqrt(cone.n)
        z = rng.standard_normal(cone.n)
        z -= (z @ dhat) * dhat
        z *= 0.5 / max(np.linalg.norm(z), 1.0)
        eye = np.eye(cone.n)
        fwd = lam * (eye + np.outer(w, z))
        inv = (eye - np.outer(w, z) / (1.0 + z @ w)) / lam
        return Dense(fwd, inverse=inv)
    raise Unsupported(f"no automorphism generator for {cone.to_text()}")


@dataclass(frozen=True)
class PositivityCheck:
    """Outcome of the sampled falsifier; truthy when no counterexample was found."""

    ok: bool
    counterexample: object
    worst_margin: float
    samples: int

    def __bool__(self):
        return self.ok


def is_positive_map(t, cone, rng, samples=10_000, tol=1e-9):
    """Sampled falsifier for ``T[K] within K``.

    It can only certify failure. Deterministic extremal and boundary points
    are tried first, followed by ``samples`` random members.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    fixed = cone.extremal_candidates() + cone.boundary_candidates() + [cone.unit()]
    pts = np.concatenate([np.stack(fixed), cone.sample_members(rng, samples)])
    m = np.asarray(cone.margin(t.apply(pts)))
    bad = np.flatnonzero(m < -tol)
    worst = float(m.min())
    if bad.size:
        return PositivityCheck(False, pts[bad[0]], worst, len(pts))
    return PositivityCheck(True, None, worst, len(pts))


def inverse_residual(t, rng, samples=100):
    """Max of ``||T(T^-1 y) - y||_inf / (1 + ||y||_inf)`` over gaussian ``y``."""
    if not t.has_inverse:
        raise Unsupported("map has no closed-form inverse")
    y = rng.standard_normal((samples, *t.shape))
    if len(t.shape) == 2:
        y = (y + np.swapaxes(y, -1, -2)) / 2
    axes = tuple(range(1, y.ndim))
    err = np.max(np.abs(t.apply(t.apply_inverse(y)) - y), axis=axes)
    return float(np.max(err / (1 + np.max(np.abs(y), axis=axes))))


def reverse_residual(t, rng, samples=100):
    """Max of ``||T^-1(T x) - x||_inf / (1 + ||x||_inf)``."""
    return inverse_residual(Inverse(t), rng, samples)


__all__ = [
    "Functional", "LinearMap", "Identity", "PermDiag", "SpinAuto", "Congruence", "Dense",
    "Inverse", "Composition", "RankOnePerturbed", "Hypotheses", "PositivityCheck",
    "apply", "apply_inverse", "pullback", "rank_one_perturb", "scaled_family",
    "sample_automorphism", "check_automorphism", "is_positive_map", "inverse_residual",
    "reverse_residual",
]
