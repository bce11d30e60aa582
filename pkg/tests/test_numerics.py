import numpy as np
import pytest

from coneperturb import kernels, numerics
from coneperturb.errors import DimensionTooLarge, NonFinite, ShapeMismatch

needs_numba = pytest.mark.skipif(kernels.numba_impl is None, reason="numba backend unavailable")


def test_sym_eig_identity():
    np.testing.assert_allclose(numerics.sym_eig(np.eye(2)).eigenvalues, [1.0, 1.0], atol=1e-15)


def test_sym_eig_diagonal():
    np.testing.assert_allclose(numerics.sym_eig(np.diag([-0.5, 1.0, 1.0])).eigenvalues, [-0.5, 1.0, 1.0], atol=1e-15)


def test_sym_eig_characteristic_polynomial():
    # roots of l^2 - 2l - 8
    eig = numerics.sym_eig([[1.0, 3.0], [3.0, 1.0]])
    np.testing.assert_allclose(eig.eigenvalues, [-2.0, 4.0], atol=1e-13)
    v = eig.eigenvectors
    np.testing.assert_allclose(v @ np.diag(eig.eigenvalues) @ v.T, [[1, 3], [3, 1]], atol=1e-13)


def test_sym_eig_matches_lapack():
    rng = np.random.default_rng(3)
    for n in (1, 2, 5, 9):
        g = rng.standard_normal((n, n))
        a = g + g.T
        np.testing.assert_allclose(numerics.sym_eig(a).eigenvalues, np.linalg.eigvalsh(a), atol=1e-11)


def test_eigvalsh_batch_keeps_leading_shape():
    rng = np.random.default_rng(4)
    g = rng.standard_normal((2, 3, 4, 4))
    a = g + np.swapaxes(g, -1, -2)
    w = numerics.eigvalsh_batch(a)
    assert w.shape == (2, 3, 4)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-11)


def test_lower_triangle_is_authoritative():
    a = numerics.as_symmat([[1.0, 99.0], [2.0, 3.0]])
    np.testing.assert_array_equal(a, [[1.0, 2.0], [2.0, 3.0]])


@pytest.mark.parametrize("bad, err", [
    (np.ones((2, 3)), ShapeMismatch),
    (np.ones(3), ShapeMismatch),
    (np.array([[1.0, np.nan], [0.0, 1.0]]), NonFinite),
])
def test_as_symmat_rejects(bad, err):
    with pytest.raises(err):
        numerics.as_symmat(bad)


def test_simplex_min_decreasing_edge():
    res = numerics.simplex_quadratic_min(np.diag([-0.5, 1.0]))
    assert res.value == pytest.approx(-0.5, abs=1e-15)
    np.testing.assert_allclose(res.argmin, [1.0, 0.0], atol=1e-15)


def test_simplex_min_identity():
    res = numerics.simplex_quadratic_min(np.eye(2))
    assert res.value == pytest.approx(0.5, abs=1e-15)
    np.testing.assert_allclose(res.argmin, [0.5, 0.5], atol=1e-15)


def test_simplex_min_at_vertex():
    res = numerics.simplex_quadratic_min([[0.0, 1.0], [1.0, 0.0]])
    assert res.value == pytest.approx(0.0, abs=1e-15)
    assert sorted(res.argmin.tolist()) == [0.0, 1.0]


def test_simplex_min_dimension_limit():
    with pytest.raises(DimensionTooLarge):
        numerics.simplex_quadratic_min(np.eye(numerics.MAX_SIMPLEX_DIM + 1))


def test_simplex_min_against_grid():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = rng.standard_normal((3, 3))
        a = (g + g.T) / 2
        exact = numerics.simplex_quadratic_min(a).value
        grid = numerics.simplex_grid_min(a, 120).value
        assert exact <= grid + 1e-12
        assert grid - exact <= np.linalg.norm(a, 2) * 3 / 120**2


def test_simplex_argmin_is_feasible_and_attains():
    rng = np.random.default_rng(6)
    g = rng.standard_normal((6, 6))
    a = (g + g.T) / 2
    res = numerics.simplex_quadratic_min(a)
    assert res.argmin.min() >= 0 and res.argmin.sum() == pytest.approx(1.0, abs=1e-12)
    assert res.argmin @ a @ res.argmin == pytest.approx(res.value, abs=1e-12)


# both backends must agree; the numpy path is also what runs under the env flag

def _sym_stack(seed, b, n):
    g = np.random.default_rng(seed).standard_normal((b, n, n))
    return np.ascontiguousarray((g + np.swapaxes(g, 1, 2)) / 2)


@needs_numba
@pytest.mark.parametrize("n", [1, 2, 3, 7, 12])
def test_backends_agree_eigh(n):
    mats = _sym_stack(n, 30, n)
    w1, v1 = kernels.numba_impl.eigh_batch(mats)
    w2, v2 = kernels.numpy_impl.eigh_batch(mats)
    np.testing.assert_allclose(w1, w2, atol=1e-12)
    for w, v in ((w1, v1), (w2, v2)):
        np.testing.assert_allclose(v @ (w[..., None] * np.swapaxes(v, 1, 2)), mats, atol=1e-11)


@needs_numba
@pytest.mark.parametrize("n", [2, 4, 8])
def test_backends_agree_simplex_min(n):
    mats = _sym_stack(10 + n, 25, n)
    v1, x1 = kernels.numba_impl.simplex_min_batch(mats)
    v2, x2 = kernels.numpy_impl.simplex_min_batch(mats)
    np.testing.assert_allclose(v1, v2, atol=1e-12)
    q = lambda x: np.einsum("bi,bij,bj->b", x, mats, x)
    np.testing.assert_allclose(q(x1), v1, atol=1e-12)
    np.testing.assert_allclose(q(x2), v2, atol=1e-12)


@needs_numba
def test_backends_agree_grid_min():
    a = _sym_stack(99, 1, 4)[0]
    r1 = kernels.numba_impl.simplex_grid_min(a, 40)
    r2 = kernels.numpy_impl.simplex_grid_min(a, 40)
    assert r1[0] == pytest.approx(r2[0], abs=1e-14)


def test_env_flag_selects_numpy(tmp_path):
    import subprocess
    import sys
    code = "from coneperturb import kernels; print(kernels.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={"CONEPERTURB_PURE_NUMPY": "1", "PATH": ""},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
