import numpy as np
import pytest

from secondkind.models import random_curvature, sphere
from secondkind.tensor_core import (
    CurvatureOperator,
    DimensionError,
    SpaceDim,
    SymTwoTensor,
    apply_second_kind,
    bianchi_residual,
    canonicalize,
    inner_sym,
    probe_tensors,
    ricci_and_scalar,
    ring_R,
    ring_matrix,
    sym_product,
    traceless_dim,
)


def test_traceless_dim():
    assert [traceless_dim(n) for n in (2, 3, 4, 6, 8)] == [2, 5, 9, 20, 35]
    assert SpaceDim(4).N == 9
    with pytest.raises(ValueError):
        SpaceDim(1)


def test_sym_product_and_inner():
    e = np.eye(3)
    A = sym_product(e[0], e[1])
    assert A.entries[0, 1] == 1.0 and A.entries[1, 0] == 1.0
    # |e_i (.) e_j|^2 = 2 for i != j, |e_i (.) e_i|^2 = 4
    assert inner_sym(A, A) == 2.0
    assert inner_sym(sym_product(e[0], e[0]), sym_product(e[0], e[0])) == 4.0
    with pytest.raises(DimensionError):
        sym_product(e[0], np.ones(4))


def test_symtwotensor_traceless_flag():
    with pytest.raises(ValueError):
        SymTwoTensor(np.eye(2), traceless=True)
    t = SymTwoTensor(np.diag([1.0, -1.0]), traceless=True)
    assert (2.0 * t).traceless
    # numpy scalars must not broadcast into the entries
    assert isinstance(np.float64(2.0) * t, SymTwoTensor)


def test_canonicalize_is_idempotent_bitwise():
    R = random_curvature(4, 3).R
    assert np.array_equal(canonicalize(R), R)
    noisy = R + 1e-3 * np.random.default_rng(0).standard_normal(R.shape)
    once = canonicalize(noisy)
    assert np.array_equal(canonicalize(once), once)
    assert np.array_equal(once, -once.transpose(1, 0, 2, 3))
    assert np.array_equal(once, once.transpose(2, 3, 0, 1))


def test_bianchi_rejected():
    R = np.zeros((3, 3, 3, 3))
    # a lone R_1213-type entry is fine, R_1234-type in 4 dims without partners is not
    R4 = np.zeros((4, 4, 4, 4))
    R4[0, 1, 2, 3] = 1.0
    with pytest.raises(ValueError, match="Bianchi"):
        CurvatureOperator(R4)
    assert bianchi_residual(CurvatureOperator(R)) == 0.0


def test_sphere_components_and_ricci():
    S = sphere(3, 1.0)
    assert S.R[0, 1, 0, 1] == 1.0 and S.R[0, 1, 1, 0] == -1.0
    sc = ricci_and_scalar(S)
    np.testing.assert_allclose(sc.Ric, 2 * np.eye(3))
    assert sc.S == pytest.approx(6.0)


def test_apply_second_kind_matches_ring():
    R = random_curvature(4, 1)
    rng = np.random.default_rng(1)
    a, b = rng.standard_normal((2, 4, 4))
    phi, psi = SymTwoTensor(a + a.T), SymTwoTensor(b + b.T)
    lhs = ring_R(R, phi, psi)
    rhs = inner_sym(apply_second_kind(R, phi), psi)
    assert lhs == pytest.approx(rhs, abs=1e-12)
    # Rring is symmetric
    assert ring_R(R, psi, phi) == pytest.approx(lhs, abs=1e-12)


def test_ring_dimension_mismatch():
    R = random_curvature(3, 0)
    with pytest.raises(DimensionError):
        ring_R(R, SymTwoTensor(np.eye(4)), SymTwoTensor(np.eye(4)))


def test_probe_tensors_orthonormal_traceless():
    hs = probe_tensors(4, 0, 1, 2, 3) + probe_tensors(4, 0, 1)
    for h in hs:
        assert abs(np.trace(h.entries)) < 1e-15
        assert h.norm() == pytest.approx(1.0)
    G = np.array([[inner_sym(a, b) for b in hs[:3]] for a in hs[:3]])
    np.testing.assert_allclose(G, np.eye(3), atol=1e-15)
    with pytest.raises(ValueError):
        probe_tensors(4, 0, 0)
    with pytest.raises(ValueError):
        probe_tensors(4, 0, 5)


def test_probe_on_sphere():
    # R(h4, h4) = R_1212 on the unit sphere
    S = sphere(3, 1.0)
    h3, h4 = probe_tensors(3, 0, 1)
    assert ring_R(S, h4, h4) == pytest.approx(1.0)
    assert ring_R(S, h3, h3) == pytest.approx(1.0)


def test_ring_matrix_symmetric():
    R = random_curvature(4, 5)
    hs = probe_tensors(4, 0, 1, 2, 3)
    M = ring_matrix(R, hs)
    np.testing.assert_array_equal(M, M.T)


def test_operator_arithmetic():
    A, B = random_curvature(3, 0), random_curvature(3, 1)
    np.testing.assert_allclose((A + 2 * B - B).R, (A + B).R, atol=1e-14)
    with pytest.raises(DimensionError):
        A + random_curvature(4, 0)
    assert A(*np.eye(3)[[0, 1, 0, 1]]) == A.R[0, 1, 0, 1]
