"""Constructive evidence that the inverse of a positive rank-one perturbation is not positive.

A witness is a pair ``(y, x)`` with ``y`` in the cone, ``x = T^-1 y`` outside
it and ``T x = y``. Membership of ``y`` is tested at ``-1e-9``, but
exteriority of ``x`` at ``-1e-6``. The three orders of magnitude between them
keep rounding from producing a witness.
"""

from dataclasses import dataclass, field

import numpy as np

from .cones import Copositive, Lexicographic, Membership, Region
from .errors import (
    BadEndpoints,
    BudgetExhausted,
    ConeError,
    NoExtremalWithPositivePairing,
    NotFoundWithinRange,
    NotNonnegative,
    PreconditionViolated,
    Singular,
    Unsupported,
)
from .functionals import Scaled
from .operators import RankOnePerturbed, pullback, rank_one_perturb

Y_TOL = 1e-9
X_TOL = 1e-6
BISECT_TOL = 1e-10
BISECT_MAX_ITER = 200

STRATEGIES = ("Direct", "BoundaryFunctional", "Extremal", "Scaling")


@dataclass
class WitnessReport:
    found: bool
    strategy: str
    attempts: int
    witness_y: object = None
    preimage_x: object = None
    y_margin: float = float("nan")
    x_margin: float = float("nan")
    scaling_n: int = None
    attempts_by_strategy: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "found": self.found,
            "strategy": self.strategy,
            "attempts": self.attempts,
            "attempts_by_strategy": dict(self.attempts_by_strategy),
            "y_margin": _num(self.y_margin),
            "x_margin": _num(self.x_margin),
            "scaling_n": self.scaling_n,
            "witness_y": None if self.witness_y is None else np.asarray(self.witness_y).tolist(),
            "preimage_x": None if self.preimage_x is None else np.asarray(self.preimage_x).tolist(),
        }


def _num(v):
    v = float(v)
    return None if np.isnan(v) else v


@dataclass(frozen=True)
class CrossingResult:
    c: float
    point: np.ndarray
    verdict_at_c: object
    iterations: int


def _verify(t, cone, y):
    """Independent check of the witness triple; returns ``(ok, x, y_margin, x_margin)``."""
    y = np.asarray(y, dtype=float)
    x = t.apply_inverse(y)
    ym, xm = cone.margin(y), cone.margin(x)
    scale = 1.0 + float(np.max(np.abs(y)))
    resid = float(np.max(np.abs(t.apply(x) - y)))
    ok = ym >= -Y_TOL and xm < -X_TOL and resid <= 1e-9 * scale
    return ok, x, ym, xm


def boundary_crossing(cone, u, v, tol=BISECT_TOL):
    """Bisect the segment ``g(t) = (1 - t) u + t v`` for its exit point from the cone.

    Keeps ``margin(g(lo)) > 0 >= margin(g(hi))``. It stops once the bracket is
    below ``tol`` and the margin at the returned point is within the
    classification tolerance, or after 200 iterations.
    """
    if isinstance(cone, Lexicographic):
        raise Unsupported("bisection needs a closed cone")
    u, v = cone.check(u), cone.check(v)
    if cone.classify(u).region is not Membership.INTERIOR:
        raise BadEndpoints("start point must be interior")
    if cone.classify(v).region is not Membership.EXTERIOR:
        raise BadEndpoints("end point must be exterior")
    lo, hi = 0.0, 1.0
    it = 0
    while it < BISECT_MAX_ITER:
        mid = 0.5 * (lo + hi)
        if cone.margin((1 - mid) * u + mid * v) > 0:
            lo = mid
        else:
            hi = mid
        it += 1
        c = 0.5 * (lo + hi)
        if hi - lo <= tol and abs(cone.margin((1 - c) * u + c * v)) <= 1e-9:
            break
    c = 0.5 * (lo + hi)
    point = (1 - c) * u + c * v
    return CrossingResult(c, point, cone.classify(point), it)


def _boundary_functional_search(cone, f, rng, budget):
    if not cone.has_interior:
        raise BudgetExhausted(f"{cone.to_text()} has empty interior; the boundary search does not apply")
    thresh = 1e-6 * f.norm()
    attempts = 0
    for x in cone.boundary_candidates_for(f):
        attempts += 1
        if cone.classify(x).region is Membership.BOUNDARY and f.eval(x) > thresh:
            return x, attempts
    while attempts < budget:
        attempts += 1
        u = cone.sample(Region.INTERIOR, rng)
        v = cone.sample(Region.EXTERIOR, rng)
        x = boundary_crossing(cone, u, v).point
        if cone.classify(x).region is Membership.BOUNDARY and f.eval(x) > thresh:
            return x, attempts
    raise BudgetExhausted("no boundary point with f > 0 found within budget")


def boundary_functional_witness(cone, f, rng, budget=1000):
    """A boundary point ``x`` with ``f(x) > 0``; unit vectors and similar are tried first."""
    return _boundary_functional_search(cone, f, rng, budget)[0]


def interior_promotion_check(t, cone, x):
    """True iff ``T`` maps the boundary point ``x`` into the interior.

    A true result shows ``T`` is not an automorphism, because automorphisms
    map the boundary to itself.
    """
    if not isinstance(t, RankOnePerturbed) or not cone.has_interior:
        raise PreconditionViolated("needs a rank-one perturbation on a cone with interior")
    if cone.classify(t.u).region is not Membership.INTERIOR:
        raise PreconditionViolated("u must be interior")
    if cone.classify(x).region is not Membership.BOUNDARY:
        raise PreconditionViolated("x must be a boundary point")
    return cone.classify(t.apply(x)).region is Membership.INTERIOR


def _ray_residual(u, w):
    """Distance from ``u`` to the ray through ``w``."""
    u, w = np.ravel(u), np.ravel(w)
    coef = max(float(u @ w) / float(w @ w), 0.0)
    return float(np.linalg.norm(u - coef * w))


def extremal_witness(cone, s, f, u, rng, budget=1000):
    """Find an extremal ``v`` with ``f(v) > 0`` and ``u`` off the ray through ``S v``.

    Then ``T v = S v + f(v) u`` is a sum of two independent members and not
    extremal. One of ``T^-1(S v)`` and ``T^-1(f(v) u) = v - T^-1(S v)``
    must leave the cone, and that one is the witness.
    """
    if isinstance(cone, Copositive):
        raise Unsupported("no extremal test for the copositive cone")
    if cone.span_dim < 2:
        raise PreconditionViolated("the cone must span at least two dimensions")
    t = RankOnePerturbed(s, f, u)
    attempts = 0
    fixed = cone.extremal_candidates()
    pool = iter(fixed)
    positive_seen = False
    while attempts < budget:
        v = next(pool, None)
        if v is None:
            pool = iter(cone.sample_extremal(rng, 64))
            continue
        attempts += 1
        fv = f.eval(v)
        if abs(fv) <= 1e-9:
            if isinstance(cone, Lexicographic) and attempts >= len(fixed) + 64:
                break
            continue
        positive_seen = True
        if _ray_residual(u, s.apply(v)) <= 1e-6:
            continue
        if cone.is_extremal(t.apply(v)):
            continue
        for y in (s.apply(v), fv * np.asarray(u, dtype=float)):
            ok, x, ym, xm = _verify(t, cone, y)
            if ok:
                return v, WitnessReport(True, "Extremal", attempts, y, x, ym, xm,
                                        attempts_by_strategy={"Extremal": attempts})
        return v, WitnessReport(False, "Extremal", attempts, attempts_by_strategy={"Extremal": attempts})
    if not positive_seen:
        raise NoExtremalWithPositivePairing("f vanishes on every extremal tried")
    return None, WitnessReport(False, "Extremal", attempts, attempts_by_strategy={"Extremal": attempts})


def _direct(t, cone, rng, budget, hints):
    attempts = 0
    fixed = [np.asarray(h, dtype=float) for h in hints] + cone.extremal_candidates() + cone.boundary_candidates()
    fixed.append(cone.unit())
    for y in fixed:
        attempts += 1
        ok, x, ym, xm = _verify(t, cone, y)
        if ok:
            return (y, x, ym, xm), attempts
    batch = 256
    while attempts < budget:
        k = min(batch, budget - attempts)
        ys = cone.sample_members(rng, k)
        xm = np.atleast_1d(cone.margin(t.apply_inverse(ys)))
        ym = np.atleast_1d(cone.margin(ys))
        hit = np.flatnonzero((ym >= -Y_TOL) & (xm < -X_TOL))
        for i in hit:
            ok, x, y_m, x_m = _verify(t, cone, ys[i])
            if ok:
                return (ys[i], x, y_m, x_m), attempts + int(i) + 1
        attempts += k
    return None, attempts


def _boundary_functional(t, cone, rng, budget):
    """Push a boundary point with ``f(x0) > 0`` slightly outward.

    ``T x0`` is interior, so ``T`` of a point just outside ``x0`` (on the ray
    from the unit through ``x0``) still lies in the cone.
    """
    if not isinstance(t, RankOnePerturbed) or not cone.has_interior:
        return None, 0
    if cone.classify(t.u).region is not Membership.INTERIOR or isinstance(cone, Lexicographic):
        return None, 0
    try:
        x0, attempts = _boundary_functional_search(cone, t.f, rng, max(budget, 1))
    except ConeError:
        return None, budget
    e = cone.unit()
    for k in range(48):
        attempts += 1
        x = x0 + 2.0 ** -k * (x0 - e)
        y = t.apply(x)
        ok, xx, ym, xm = _verify(t, cone, y)
        if ok:
            return (y, xx, ym, xm), attempts
    return None, attempts


def _extremal(t, cone, rng, budget):
    if not isinstance(t, RankOnePerturbed):
        return None, 0
    try:
        _, rep = extremal_witness(cone, t.s, t.f, t.u, rng, budget)
    except ConeError:
        return None, 0
    if rep.found:
        return (rep.witness_y, rep.preimage_x, rep.y_margin, rep.x_margin), rep.attempts
    return None, rep.attempts


def _scaling(t, cone):
    """For ``T_n`` from a scaled family: probe ``y = S w`` with ``f(w) > 0``."""
    if not isinstance(t, RankOnePerturbed) or t.scaling_n is None:
        return None, 0
    attempts = 0
    for w in cone.extremal_candidates() + cone.boundary_candidates() + [cone.unit()]:
        attempts += 1
        if t.base_f.eval(t.s.apply(w)) <= 1e-9:
            continue
        ok, x, ym, xm = _verify(t, cone, t.s.apply(w))
        if ok:
            return (t.s.apply(w), x, ym, xm), attempts
    return None, attempts


def nonpositive_inverse_witness(t, cone, rng, budget=10_000, hints=()):
    """Search for ``y`` in the cone with ``T^-1 y`` outside it.

    The strategies run cheapest first: Direct, BoundaryFunctional, Extremal,
    Scaling. Direct sampling gets half the budget. ``found=False`` only means
    the search came up empty.
    """
    if not t.has_inverse:
        raise Unsupported("witness search needs a closed-form inverse")
    counts = {}
    total = 0
    runs = (
        ("Direct", lambda: _direct(t, cone, rng, max(budget // 2, 1), hints)),
        ("BoundaryFunctional", lambda: _boundary_functional(t, cone, rng, max((budget - total) // 2, 1))),
        ("Extremal", lambda: _extremal(t, cone, rng, max(budget - total, 1))),
        ("Scaling", lambda: _scaling(t, cone)),
    )
    for name, run in runs:
        if total >= budget:
            break
        hit, used = run()
        counts[name] = used
        total += used
        if hit is not None:
            y, x, ym, xm = hit
            return WitnessReport(True, name, total, np.asarray(y), np.asarray(x), ym, xm,
                                 getattr(t, "scaling_n", None), counts)
    if total < budget:
        # strategies that did not apply leave budget behind; spend it on sampling
        hit, used = _direct(t, cone, rng, budget - total, ())
        counts["Direct"] = counts.get("Direct", 0) + used
        total += used
        if hit is not None:
            y, x, ym, xm = hit
            return WitnessReport(True, "Direct", total, np.asarray(y), np.asarray(x), ym, xm,
                                 getattr(t, "scaling_n", None), counts)
    return WitnessReport(False, "Direct", total, attempts_by_strategy=counts)


def smallest_scaling_n(s, f, u, cone, rng, n_max=64):
    """Smallest ``n`` for which ``T_n = S + n (f o S) u`` has a non-positive inverse.

    With ``f(u) = 0`` the inverse is ``T_n^-1 y = S^-1 y - n f(y) S^-1 u``, so
    one fixed ``y`` with ``f(y) > 0`` is probed for increasing ``n``.
    """
    u = cone.check(u)
    if abs(f.eval(u)) > 1e-9:
        raise PreconditionViolated("scaling search needs f(u) = 0")
    pool = cone.extremal_candidates() + cone.boundary_candidates() + [cone.unit()]
    pool += list(cone.sample_members(rng, 256))
    y = next((p for p in pool if cone.margin(p) >= -Y_TOL and f.eval(p) > 1e-9), None)
    if y is None:
        raise NotFoundWithinRange("no member with f(y) > 0 found")
    base = rank_one_perturb(s, f, u, cone, rng)
    s_inv_u = s.apply_inverse(u)
    for n in range(1, int(n_max) + 1):
        t = RankOnePerturbed(s, Scaled(n, pullback(f, s)), u, base.hypotheses, cone)
        t.scaling_n, t.base_f = n, f
        ok, x, ym, xm = _verify(t, cone, y)
        explicit = s.apply_inverse(y) - n * f.eval(y) * s_inv_u
        if np.max(np.abs(x - explicit)) > 1e-9 * (1 + np.max(np.abs(y))):
            raise AssertionError("scaled-family inverse disagrees with the explicit formula")
        if ok:
            return n, WitnessReport(True, "Scaling", n, y, x, ym, xm, n, {"Scaling": n})
    raise NotFoundWithinRange(f"no witness for n <= {n_max}")


# ---------------------------------------------------------------------------
# 2x2 nonnegative matrices as permutation-diagonal plus nonnegative rank one


@dataclass(frozen=True)
class CaseCertificate:
    """Feasibility of one permutation case.

    ``required`` is the product the rank-one part must reach. ``bound`` is
    the strict upper limit that a positive diagonal allows.
    """

    case: str
    required: float
    bound: float

    @property
    def feasible(self):
        return self.required < self.bound


@dataclass(frozen=True)
class Decomposition:
    case: str
    p: np.ndarray
    d: np.ndarray
    u: np.ndarray
    v: np.ndarray
    certificates: tuple
    grid_min_residual: float = float("nan")

    def reconstruct(self):
        return self.p @ np.diag(self.d) + np.outer(self.u, self.v)


@dataclass(frozen=True)
class Infeasibility:
    certificates: tuple
    grid_min_residual: float = float("nan")


_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def _identity_case(m):
    """Solve ``M = D + u v^T`` when ``M12 M21 < M11 M22``."""
    m11, m12, m21, m22 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if m12 == 0 and m21 == 0:
        a = m11 / 2
        r = np.sqrt(a)
        return np.array([m11 - a, m22]), np.array([r, 0.0]), np.array([r, 0.0])
    if m12 == 0:
        a = m11 / 2
        return np.array([m11 - a, m22]), np.array([a, m21]), np.array([1.0, 0.0])
    if m21 == 0:
        a = m11 / 2
        return np.array([m11 - a, m22]), np.array([1.0, 0.0]), np.array([a, m12])
    # (M11 - d1)(M22 - d2) = M12 M21 with both factors shrunk by the same ratio;
    # factored so that tiny off-diagonals do not underflow
    ratio = np.sqrt(m12 / m11) * np.sqrt(m21 / m22)
    a, b = ratio * m11, ratio * m22
    if a == 0 or b == 0:
        # the off-diagonal product is below the float range; drop the smaller entry
        return _identity_case(np.array([[m11, m12 if m12 > m21 else 0.0], [m21 if m21 >= m12 else 0.0, m22]]))
    r = np.sqrt(a)
    return np.array([m11 - a, m22 - b]), np.array([r, m21 / r]), np.array([r, m12 / r])


def _sigma_min_2x2(r):
    fro2 = np.sum(r * r, axis=(-2, -1))
    det = r[..., 0, 0] * r[..., 1, 1] - r[..., 0, 1] * r[..., 1, 0]
    disc = np.sqrt(np.maximum(fro2 * fro2 - 4 * det * det, 0.0))
    return np.sqrt(np.maximum((fro2 - disc) / 2, 0.0))


def decomposition_grid_residual(m, step=0.01, upper=10.0):
    """Grid minimum over ``(d1, d2)`` in ``(0, upper]^2`` of the distance to a valid split.

    The residual of ``R = M - P D`` is ``||min(R, 0)||_F + sigma_2(max(R, 0))``.
    It vanishes exactly when ``R`` is a nonnegative matrix of rank at most one.
    """
    m = np.asarray(m, dtype=float)
    d = np.arange(1, int(round(upper / step)) + 1) * step
    d1, d2 = np.meshgrid(d, d, indexing="ij")
    best = np.inf
    for p in (np.eye(2), _SWAP):
        r = np.broadcast_to(m, d1.shape + (2, 2)).copy()
        r[..., 0, 0] -= p[0, 0] * d1
        r[..., 1, 0] -= p[1, 0] * d1
        r[..., 0, 1] -= p[0, 1] * d2
        r[..., 1, 1] -= p[1, 1] * d2
        neg = np.sqrt(np.sum(np.minimum(r, 0.0) ** 2, axis=(-2, -1)))
        res = neg + _sigma_min_2x2(np.maximum(r, 0.0))
        best = min(best, float(res.min()))
    return best


def decompose_2x2(m, grid=True):
    """Write a nonnegative invertible 2x2 matrix as ``P D + u v^T``.

    ``P`` is the identity or the swap and ``D`` a positive diagonal, with
    ``u, v >= 0``. With ``P = I`` the split exists iff ``M12 M21 < M11 M22``.
    With the swap it exists iff ``M11 M22 < M12 M21``. Both certificates are
    returned together with an optional grid-search confirmation.
    """
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError("decompose_2x2 takes a 2x2 matrix")
    if np.any(m < 0) or not np.all(np.isfinite(m)):
        raise NotNonnegative("matrix must be entrywise nonnegative")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) <= 1e-12 * max(1.0, float(np.max(m)) ** 2):
        raise Singular("matrix must be invertible")
    certs = (
        CaseCertificate("identity", m[0, 1] * m[1, 0], m[0, 0] * m[1, 1]),
        CaseCertificate("swap", m[0, 0] * m[1, 1], m[0, 1] * m[1, 0]),
    )
    resid = decomposition_grid_residual(m) if grid else float("nan")
    if certs[0].feasible:
        d, u, v = _identity_case(m)
        return Decomposition("identity", np.eye(2), d, u, v, certs, resid)
    if certs[1].feasible:
        # P^T M = D + (P^T u) v^T reduces the swap case to the identity case
        d, u, v = _identity_case(_SWAP @ m)
        return Decomposition("swap", _SWAP.copy(), d, _SWAP @ u, v, certs, resid)
    return Infeasibility(certs, resid)  # pragma: no cover - needs det = 0, rejected above
