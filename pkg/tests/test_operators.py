import numpy as np
import pytest

from coneperturb import cones as C
from coneperturb.errors import NotAutomorphism, NotInCone, NotPositiveFunctional, ShapeMismatch
from coneperturb.functionals import DenseCovector, Scaled, SpinDual, TraceForm
from coneperturb.operators import (
    Dense,
    Identity,
    Inverse,
    PermDiag,
    SpinAuto,
    apply,
    apply_inverse,
    check_automorphism,
    inverse_residual,
    is_positive_map,
    pullback,
    rank_one_perturb,
    reverse_residual,
    sample_automorphism,
    scaled_family,
)

from conftest import XHAT, all_cones


def spin_t():
    return rank_one_perturb(Identity((3,)), SpinDual(XHAT), [0.0, 0.0, 1.0], C.Lorentz(2))


def test_spin_factor_apply():
    np.testing.assert_array_equal(apply(spin_t(), np.append(XHAT, 0.0)), np.append(XHAT, 1.0))


def test_orthant_control_doubles_first_coordinate():
    t = rank_one_perturb(Identity((4,)), DenseCovector([1.0, 0, 0, 0]), np.eye(4)[0], C.Orthant(4))
    x = np.array([1.0, -2.0, 3.0, 4.0])
    np.testing.assert_array_equal(t.apply(x), [2.0, -2.0, 3.0, 4.0])
    np.testing.assert_array_equal(Inverse(t).matrix(), np.diag([0.5, 1.0, 1.0, 1.0]))


def test_identity_is_identity():
    p = np.array([[1.0, 2.0], [3.0, 4.0]])
    np.testing.assert_array_equal(Identity((2, 2)).apply(p), p)


def test_inverse_special_form():
    # lambda = f(e1) / (1 + f(e2)) = 1/2
    t = rank_one_perturb(Identity((2,)), DenseCovector([1.0, 1.0]), [0.0, 1.0], C.Orthant(2))
    np.testing.assert_array_equal(apply_inverse(t, [1.0, 0.0]), [1.0, -0.5])


def test_inverse_general_form():
    t = rank_one_perturb(PermDiag([0, 1], [2.0, 1.0]), DenseCovector([1.0, 0.0]), [0.0, 1.0], C.Orthant(2))
    np.testing.assert_array_equal(t.apply_inverse([2.0, 3.0]), [1.0, 2.0])
    np.testing.assert_array_equal(t.apply([1.0, 2.0]), [2.0, 3.0])


def test_construction_validation():
    o = C.Orthant(2)
    with pytest.raises(NotInCone):
        rank_one_perturb(Identity((2,)), DenseCovector([1.0, 0.0]), [-1.0, 0.0], o)
    with pytest.raises(NotPositiveFunctional):
        rank_one_perturb(Identity((2,)), DenseCovector([1.0, -1.0]), [1.0, 0.0], o)
    with pytest.raises(NotAutomorphism):
        rank_one_perturb(Dense([[1.0, -1.0], [0.0, 1.0]]), DenseCovector([1.0, 0.0]), [1.0, 0.0], o)
    with pytest.raises(ShapeMismatch):
        rank_one_perturb(Identity((3,)), DenseCovector([1.0, 0.0]), [1.0, 0.0], o)


def test_hypothesis_flags():
    assert spin_t().hypotheses.u_interior
    t = rank_one_perturb(Identity((3, 3)), TraceForm(np.eye(3)), np.eye(3), C.Psd(3))
    assert t.hypotheses.u_interior
    t = rank_one_perturb(Identity((3,)), DenseCovector([1.0, 0, 0]), np.eye(3)[0], C.Orthant(3))
    assert not t.hypotheses.u_interior


def test_pullback_examples():
    f = pullback(DenseCovector([1.0, 1.0]), PermDiag([0, 1], [2.0, 3.0]))
    np.testing.assert_array_equal(f.weights, [2.0, 3.0])
    f = pullback(DenseCovector([0.0, 1.0]), PermDiag([1, 0], [1.0, 1.0]))
    np.testing.assert_array_equal(f.weights, [1.0, 0.0])
    th = 0.3
    q = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    f = pullback(SpinDual(XHAT), SpinAuto(q, 2.0))
    assert isinstance(f, Scaled) and f.coef == 2.0
    np.testing.assert_allclose(f.inner.xhat, q.T @ XHAT, atol=1e-15)


@pytest.mark.parametrize("cone", all_cones(), ids=lambda c: c.to_text())
def test_pullback_agrees_with_composition(cone, rng):
    s = sample_automorphism(cone, rng)
    f = cone.sample_dual(rng)
    g = pullback(f, s)
    pts = cone.random_point(rng, 20)
    np.testing.assert_allclose(g.eval(pts), f.eval(s.apply(pts)), atol=1e-12)


@pytest.mark.parametrize("cone", all_cones(), ids=lambda c: c.to_text())
def test_sampled_automorphisms(cone, rng):
    s = sample_automorphism(cone, rng)
    assert check_automorphism(s, cone, rng)
    pts = cone.random_point(rng, 20)
    np.testing.assert_allclose(s.apply_inverse(s.apply(pts)), pts, atol=1e-10)


def test_permdiag_text_is_one_based():
    assert PermDiag([1, 2, 0], [0.5, 2.0, 1.0]).to_text() == "permdiag:(2,3,1):(0.5,2.0,1.0)"


def test_lexicographic_shear_is_automorphism(rng):
    s = Dense([[1.0, 0.0], [5.0, 2.0]], inverse=[[1.0, 0.0], [-2.5, 0.5]])
    assert check_automorphism(s, C.Lexicographic(), rng)
    np.testing.assert_array_equal(s.apply([0.0, 3.0]), [0.0, 6.0])


def test_is_positive_map_examples(rng):
    for cone in all_cones():
        assert is_positive_map(Identity(cone.ambient_shape), cone, rng, 500)
    res = is_positive_map(Dense(-np.eye(2)), C.Orthant(2), rng, 100)
    assert not res
    assert C.Orthant(2).margin(res.counterexample) >= 0
    np.testing.assert_array_equal(res.counterexample, [1.0, 0.0])
    assert is_positive_map(spin_t(), C.Lorentz(2), rng, 10_000)


def test_inverse_residual_examples(rng):
    assert inverse_residual(Identity((3,)), rng) == 0.0
    assert inverse_residual(spin_t(), rng, 100) <= 1e-12
    assert inverse_residual(PermDiag([2, 0, 1], [0.5, 2.0, 3.0]), rng) <= 1e-15
    assert reverse_residual(spin_t(), rng, 100) <= 1e-12


def test_scaled_family_inverse_formula(rng):
    cone = C.Orthant(3)
    s = PermDiag([1, 2, 0], [2.0, 1.0, 0.5])
    f = DenseCovector([0.0, 1.0, 0.0])
    u = np.array([1.0, 0.0, 0.0])
    for n in (1, 3, 10):
        t = scaled_family(s, f, u, n, cone, rng)
        y = cone.random_point(rng, 5)
        explicit = s.apply_inverse(y) - n * f.eval(y)[:, None] * s.apply_inverse(u)
        np.testing.assert_allclose(t.apply_inverse(y), explicit, atol=1e-12)
    with pytest.raises(ValueError):
        scaled_family(s, f, u, 0, cone, rng)


def test_batched_apply_matches_loop(rng):
    t = rank_one_perturb(Identity((3, 3)), TraceForm(np.eye(3)), np.eye(3), C.Psd(3))
    pts = C.Psd(3).random_point(rng, 6)
    np.testing.assert_allclose(t.apply(pts), np.stack([t.apply(p) for p in pts]), atol=0)
