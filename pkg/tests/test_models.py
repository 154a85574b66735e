import numpy as np
import pytest

from secondkind.kahler import hsc, kahler_residual, orth_bisec, random_unitary_frame
from secondkind.models import (
    ModelSpec,
    block_product,
    const_hsc,
    cp_product,
    cp_times_flat,
    curvature_subspace,
    flat,
    kahler_subspace,
    product,
    random_kahler,
    scaled_product_scan,
    sphere,
    subspace_residuals,
    zoo,
)
from secondkind.spectral import assemble, spectrum, threshold_from_spectrum
from secondkind.tensor_core import DimensionError, bianchi_residual


@pytest.mark.parametrize("m", [1, 2, 3])
def test_const_hsc_constant(m, rng):
    K = const_hsc(m, 4.0)
    X = rng.standard_normal((100, 2 * m))
    for x in X / np.linalg.norm(X, axis=1, keepdims=True):
        assert hsc(K, x) == pytest.approx(4.0, abs=1e-10)
    if m >= 2:
        F = random_unitary_frame(m, 2)
        assert orth_bisec(K, F[:, 0], F[:, 1]) == pytest.approx(2.0, abs=1e-10)


def test_const_hsc_negative_and_zero():
    np.testing.assert_allclose(spectrum(const_hsc(2, -4.0)), [-4] * 6 + [2] * 3, atol=1e-12)
    assert not np.any(const_hsc(2, 0.0).R)


def test_sphere_spectrum():
    np.testing.assert_allclose(spectrum(sphere(2, 1.0)), [1.0, 1.0], atol=1e-12)


def test_product_blocks():
    P = product(sphere(2, 1.0), flat(1))
    np.testing.assert_allclose(spectrum(P), [-1 / 3, 0, 0, 1, 1], atol=1e-12)
    assert P.R[0, 2, 0, 2] == 0.0
    assert not np.any(product(flat(2), flat(3)).R)
    with pytest.raises(DimensionError):
        block_product(4, [([0, 1], sphere(2)), ([1, 2], sphere(2))])
    with pytest.raises(DimensionError):
        block_product(4, [([0, 1], sphere(2))])


def test_kahler_product_layout():
    K = cp_product(1, 1)
    # factor 1 on real indices {0, 2}, factor 2 on {1, 3}
    assert K.R[0, 2, 0, 2] == 4.0 and K.R[1, 3, 1, 3] == 4.0
    assert K.R[0, 1, 0, 1] == 0.0
    assert threshold_from_spectrum(spectrum(K)) == pytest.approx(6.0)


def test_cp_times_flat():
    K = cp_times_flat(1)
    assert K.n == 4 and K.R[0, 2, 0, 2] == 4.0 and not np.any(K.R[1])
    eigs = spectrum(cp_times_flat(2))
    assert np.sum(np.abs(eigs) < 1e-9) >= 8


@pytest.mark.parametrize("m,d", [(1, 1), (2, 9), (3, 36)])
def test_kahler_subspace_dimension(m, d):
    sub = kahler_subspace(m)
    assert sub.dim == d == (m * (m + 1) // 2) ** 2
    b, k = subspace_residuals(sub)
    assert b <= 1e-10 and k <= 1e-10
    G = sub.basis.reshape(sub.dim, -1)
    np.testing.assert_allclose(G @ G.T, np.eye(sub.dim), atol=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_curvature_subspace_dimension(n):
    # n^2 (n^2 - 1) / 12
    assert curvature_subspace(n).dim == n * n * (n * n - 1) // 12


def test_random_kahler_deterministic():
    a, b = random_kahler(2, 5), random_kahler(2, 5)
    assert np.array_equal(a.R, b.R)
    assert not np.array_equal(a.R, random_kahler(2, 6).R)
    assert kahler_residual(a.base, a.J) <= 1e-10 and bianchi_residual(a) <= 1e-10


def test_linearity(kahler2):
    A, B = kahler2[0], kahler2[1]
    M = assemble(2.0 * A + (-3.0) * B).M
    np.testing.assert_allclose(M, 2.0 * assemble(A).M - 3.0 * assemble(B).M, atol=1e-12)


def test_scan():
    r = scaled_product_scan(3, [0.5, 1.0, 2.0])
    assert r.best_ratio == 1.0
    assert r.best_threshold == pytest.approx(44 / 3)
    assert scaled_product_scan(2, [1.0]).best_threshold == pytest.approx(6.0)
    with pytest.raises(ValueError):
        scaled_product_scan(3, [])


def test_model_spec_grammar():
    spec = ModelSpec.parse_product("cp:2:4,cp:1:4")
    K = spec.build()
    assert K.n == 6 and K.m == 3
    assert ModelSpec.parse_factor("flat:3").build().n == 3
    assert ModelSpec.parse_factor("sphere:2:1").build().R[0, 1, 0, 1] == 1.0
    for bad in ("cp:2", "torus:2", "flat:x", "sphere:2:1:3"):
        with pytest.raises(ValueError):
            ModelSpec.parse_factor(bad)
    with pytest.raises(ValueError):
        ModelSpec("bogus")


def test_zoo_contents():
    z = zoo()
    assert "CP2(4)" in z and "S2xR" in z
    assert all(bianchi_residual(R) <= 1e-12 for R in z.values())
