import numpy as np
import pytest

from coneperturb import cones as C
from coneperturb.cones import Membership, Region
from coneperturb.errors import (
    BadEndpoints,
    BudgetExhausted,
    NoExtremalWithPositivePairing,
    NotNonnegative,
    PreconditionViolated,
    Singular,
    Unsupported,
)
from coneperturb.functionals import DenseCovector, LexFirstCoord, Scaled, SpinDual, TraceForm
from coneperturb.operators import Identity, RankOnePerturbed, rank_one_perturb, sample_automorphism
from coneperturb.witnesses import (
    Decomposition,
    Infeasibility,
    boundary_crossing,
    boundary_functional_witness,
    decompose_2x2,
    decomposition_grid_residual,
    extremal_witness,
    interior_promotion_check,
    nonpositive_inverse_witness,
    smallest_scaling_n,
)

from conftest import XHAT


@pytest.mark.parametrize("cone, u, v, c, point", [
    (C.Orthant(2), [1.0, 1.0], [2.0, -1.0], 0.5, [1.5, 0.0]),
    (C.Lorentz(1), [0.0, 1.0], [2.0, 0.0], 1 / 3, [2 / 3, 2 / 3]),
    (C.Psd(2), np.eye(2), np.diag([1.0, -1.0]), 0.5, np.diag([1.0, 0.0])),
])
def test_boundary_crossing_analytic(cone, u, v, c, point):
    res = boundary_crossing(cone, u, v)
    assert abs(res.c - c) <= 1e-6
    np.testing.assert_allclose(res.point, point, atol=1e-6)
    assert res.verdict_at_c.region is Membership.BOUNDARY


def test_boundary_crossing_endpoints():
    with pytest.raises(BadEndpoints):
        boundary_crossing(C.Orthant(2), [1.0, 0.0], [-1.0, 0.0])
    with pytest.raises(BadEndpoints):
        boundary_crossing(C.Orthant(2), [1.0, 1.0], [2.0, 2.0])
    with pytest.raises(Unsupported):
        boundary_crossing(C.Lexicographic(), [1.0, 0.0], [-1.0, 0.0])


def test_boundary_functional_examples(rng):
    x = boundary_functional_witness(C.Orthant(3), DenseCovector(np.ones(3)), rng)
    np.testing.assert_array_equal(x, [1.0, 0.0, 0.0])
    x = boundary_functional_witness(C.Lorentz(2), SpinDual(XHAT), rng)
    r = x[2]
    assert r > 0 and C.Lorentz(2).classify(x).region is Membership.BOUNDARY
    assert SpinDual(XHAT).eval(x) > 0
    with pytest.raises(BudgetExhausted):
        boundary_functional_witness(C.Ray(3, [0.0, 0.6, 0.8]), DenseCovector(np.ones(3)), rng)


def test_interior_promotion_examples():
    t = rank_one_perturb(Identity((3,)), SpinDual(XHAT), [0.0, 0.0, 1.0], C.Lorentz(2))
    assert interior_promotion_check(t, C.Lorentz(2), np.append(XHAT, 1.0))
    o = C.Orthant(4)
    t = rank_one_perturb(Identity((4,)), DenseCovector(np.ones(4)), np.ones(4), o)
    assert interior_promotion_check(t, o, np.eye(4)[0])
    t = rank_one_perturb(Identity((4,)), DenseCovector(np.eye(4)[0]), np.eye(4)[0], o)
    with pytest.raises(PreconditionViolated):
        interior_promotion_check(t, o, np.eye(4)[1])


def test_extremal_witness_orthant(rng):
    o = C.Orthant(3)
    v, rep = extremal_witness(o, Identity((3,)), DenseCovector([1.0, 0, 0]), np.eye(3)[1], rng)
    np.testing.assert_array_equal(v, [1.0, 0.0, 0.0])
    assert not o.is_extremal(np.array([1.0, 1.0, 0.0]))
    assert rep.found and rep.x_margin < -1e-6 and rep.y_margin >= -1e-9


def test_extremal_witness_lorentz(rng):
    yhat = np.array([0.0, 1.0])
    v, rep = extremal_witness(C.Lorentz(2), Identity((3,)), SpinDual(XHAT), np.append(yhat, 1.0), rng)
    assert C.Lorentz(2).is_extremal(v)
    assert rep.found


def test_extremal_witness_lexicographic(rng):
    with pytest.raises(NoExtremalWithPositivePairing):
        extremal_witness(C.Lexicographic(), Identity((2,)), LexFirstCoord(), [1.0, 0.0], rng)


def test_extremal_witness_ray_span(rng):
    ray = C.Ray(3, [0.0, 0.6, 0.8])
    with pytest.raises(PreconditionViolated):
        extremal_witness(ray, Identity((3,)), DenseCovector(np.ones(3)), ray.direction, rng)


def test_witness_spin_factor(rng):
    t = rank_one_perturb(Identity((3,)), SpinDual(XHAT), [0.0, 0.0, 1.0], C.Lorentz(2))
    rep = nonpositive_inverse_witness(t, C.Lorentz(2), rng, hints=[np.append(XHAT, 1.0)])
    assert rep.found and rep.strategy == "Direct"
    np.testing.assert_allclose(rep.preimage_x, np.append(XHAT, 0.0), atol=1e-12)
    assert rep.x_margin == pytest.approx(-1.0, abs=1e-12)


def test_witness_recovers_d(rng):
    t = rank_one_perturb(Identity((3, 3)), TraceForm(np.eye(3)), np.eye(3), C.Psd(3))
    rep = nonpositive_inverse_witness(t, C.Psd(3), rng, hints=[np.diag([1.0, 2.5, 2.5])])
    np.testing.assert_allclose(rep.preimage_x, np.diag([-0.5, 1.0, 1.0]), atol=1e-12)
    assert rep.x_margin == pytest.approx(-0.5, abs=1e-12)


def test_witness_is_verified_independently(rng):
    cone = C.Psd(3)
    t = rank_one_perturb(sample_automorphism(cone, rng), cone.sample_dual(rng),
                         cone.sample(Region.INTERIOR, rng), cone, rng)
    rep = nonpositive_inverse_witness(t, cone, rng)
    assert rep.found
    assert cone.margin(rep.witness_y) >= -1e-9
    x = t.apply_inverse(rep.witness_y)
    assert cone.margin(x) < -1e-6
    np.testing.assert_allclose(t.apply(x), rep.witness_y, atol=1e-9)


def test_witness_negative_control(rng):
    o = C.Orthant(3)
    t = rank_one_perturb(Identity((3,)), DenseCovector([1.0, 0, 0]), np.eye(3)[0], o)
    rep = nonpositive_inverse_witness(t, o, rng, budget=2000)
    assert not rep.found and rep.attempts >= 2000


def test_witness_reports_are_json_ready(rng):
    import json
    t = rank_one_perturb(Identity((2,)), DenseCovector([1.0, 1.0]), [0.0, 1.0], C.Orthant(2))
    rep = nonpositive_inverse_witness(t, C.Orthant(2), rng)
    json.dumps(rep.as_dict())


def test_smallest_scaling_n_examples(rng):
    n, rep = smallest_scaling_n(Identity((3,)), DenseCovector([0.0, 1.0, 0.0]), np.eye(3)[0], C.Orthant(3), rng)
    assert n == 1 and rep.found
    np.testing.assert_allclose(rep.preimage_x, [-1.0, 1.0, 0.0])
    e1, e2 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    n, rep = smallest_scaling_n(Identity((2, 2)), TraceForm(e2), e1, C.Psd(2), rng)
    assert n == 1 and rep.x_margin == pytest.approx(-1.0, abs=1e-12)
    n, rep = smallest_scaling_n(Identity((2, 2)), Scaled(0.1, TraceForm(e2)), e1, C.Psd(2), rng)
    assert n == 1 and rep.x_margin == pytest.approx(-0.1, abs=1e-12)


def test_smallest_scaling_needs_f_u_zero(rng):
    with pytest.raises(PreconditionViolated):
        smallest_scaling_n(Identity((2,)), DenseCovector([1.0, 1.0]), [1.0, 0.0], C.Orthant(2), rng)


def test_decompose_remark_matrix():
    # the swap certificate is feasible (1 < 6), so this matrix does decompose
    m = np.array([[1.0, 3.0], [2.0, 4.0]])
    res = decompose_2x2(m)
    ident, swap = res.certificates
    assert (ident.required, ident.bound) == (6.0, 4.0) and not ident.feasible
    assert (swap.required, swap.bound) == (4.0, 6.0) and swap.feasible
    assert isinstance(res, Decomposition) and res.case == "swap"
    np.testing.assert_allclose(res.reconstruct(), m, atol=1e-12)
    assert res.d.min() > 0 and res.u.min() >= 0 and res.v.min() >= 0
    assert res.grid_min_residual < 0.05


def test_remark_matrix_explicit_swap_split():
    from fractions import Fraction as F
    p = [[0, 1], [1, 0]]
    d = [F(1, 2), F(1, 3)]
    u, v = [F(1), F(3, 2)], [F(1), F(8, 3)]
    m = [[p[i][j] * d[j] + u[i] * v[j] for j in range(2)] for i in range(2)]
    assert m == [[1, 3], [2, 4]]


def test_decompose_constructed_matrix():
    m = np.array([[2.0, 2.0], [1.0, 3.0]])
    res = decompose_2x2(m)
    assert isinstance(res, Decomposition) and res.case == "identity"
    np.testing.assert_allclose(res.reconstruct(), m, atol=1e-12)


def test_decompose_diagonal():
    res = decompose_2x2([[2.0, 0.0], [0.0, 1.0]])
    np.testing.assert_allclose(res.reconstruct(), np.diag([2.0, 1.0]), atol=1e-15)
    assert np.all(res.d > 0)


def test_decompose_rejects():
    with pytest.raises(NotNonnegative):
        decompose_2x2([[1.0, -1.0], [0.0, 1.0]])
    with pytest.raises(Singular):
        decompose_2x2([[1.0, 2.0], [2.0, 4.0]])


def test_grid_residual_vanishes_on_decomposable():
    assert decomposition_grid_residual([[2.0, 2.0], [1.0, 3.0]]) < 1e-9
    assert isinstance(Infeasibility((), 0.0), Infeasibility)


def test_rank_one_without_validation_still_inverts():
    t = RankOnePerturbed(Identity((2,)), DenseCovector([1.0, 2.0]), np.array([1.0, 1.0]))
    y = np.array([3.0, -1.0])
    np.testing.assert_allclose(t.apply(t.apply_inverse(y)), y, atol=1e-15)
