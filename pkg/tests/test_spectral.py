from fractions import Fraction

import numpy as np
import pytest

from secondkind.bases import kahler_basis, standard_basis
from secondkind.kahler import random_unitary_frame
from secondkind.models import const_hsc, flat, random_curvature
from secondkind.spectral import (
    NEVER,
    alpha_status,
    alpha_threshold,
    assemble,
    basis_probe,
    f_partial,
    haar_orthogonal,
    spectral_report,
    spectrum,
    status_from_spectrum,
    threshold_constants,
    threshold_from_spectrum,
)


def test_f_partial():
    A = [3.0, -1.0, 2.0, 0.5]
    assert f_partial(A, 1) == -1.0
    assert f_partial(A, 2) == -0.5
    assert f_partial(A, 2.5) == pytest.approx(0.5)
    assert f_partial(A, 4) == pytest.approx(4.5)
    with pytest.raises(ValueError):
        f_partial(A, 0.5)
    with pytest.raises(ValueError):
        f_partial(A, 4.01)


def test_threshold_closed_form():
    # f = -2, -1, 1 at 1, 2, 3: root on [2, 3] at 2.5
    assert threshold_from_spectrum([-2.0, 1.0, 2.0]) == pytest.approx(2.5)
    assert threshold_from_spectrum([1.0, 2.0]) == 1.0
    assert threshold_from_spectrum([-3.0, 1.0]) == NEVER
    assert threshold_from_spectrum([-1.0, 1.0]) == 2.0


def test_status_order():
    z = np.zeros(5)
    assert status_from_spectrum(z, 2).status == "zero"
    assert status_from_spectrum([1, 2, 3], 1).status == "positive"
    assert status_from_spectrum([-1, 1, 3], 2).status == "nonnegative"
    assert status_from_spectrum([-3, -2, 1], 2).status == "negative"
    assert status_from_spectrum([-1, 1, 5], 1.5).status == "indefinite"
    with pytest.raises(ValueError):
        status_from_spectrum([1, 2], 3)


def test_cp2_status_boundary():
    K = const_hsc(2, 4.0)
    st = alpha_status(K, 4.5)
    assert st.status == "nonnegative" and abs(st.f_value) <= st.tol
    assert alpha_status(K, 4.4).status == "indefinite"
    assert alpha_status(-1 * K, 4.5).status == "nonpositive"
    assert alpha_status(flat(4), 1).status == "zero"


def test_spectrum_basis_independent(kahler2):
    K = kahler2[0]
    e1 = spectrum(K)
    e2 = spectrum(K, kahler_basis(2, random_unitary_frame(2, 9)))
    e3 = spectrum(K, standard_basis(4))
    np.testing.assert_allclose(e1, e2, atol=1e-12)
    np.testing.assert_allclose(e1, e3, atol=1e-12)


def test_assemble_requires_complete_basis():
    B = kahler_basis(2)
    with pytest.raises(ValueError, match="not an orthonormal basis"):
        assemble(const_hsc(2, 4.0), B.subset(range(5)))


def test_trace_identity_general():
    for s in range(5):
        R = random_curvature(5, s)
        rep = spectral_report(R)
        assert rep.trace_residual <= 1e-9 * R.scale


def test_haar_orthogonal():
    Q = haar_orthogonal(6, np.random.default_rng(0), size=4)
    for q in Q:
        np.testing.assert_allclose(q.T @ q, np.eye(6), atol=1e-12)


def test_probe_never_below_eigen_sum(kahler2):
    K = kahler2[2]
    for a in (2, 4.5, 7.25):
        f = f_partial(spectrum(K), a)
        assert basis_probe(K, a, trials=200, seed=1) >= f - 1e-9
        # the eigenbasis attains it
        assert basis_probe(K, a, trials=1, seed=1, include_eigenbasis=True) == pytest.approx(f, abs=1e-9)


def test_probe_deterministic(kahler2):
    assert basis_probe(kahler2[0], 3, 150, seed=4) == basis_probe(kahler2[0], 3, 150, seed=4)


def test_threshold_constants_exact():
    tc = threshold_constants(2)
    assert tc.alpha == 6 and tc.beta == 6 and tc.gamma == Fraction(15, 2)
    assert tc.flat == Fraction(9, 2) and tc.N == 9
    tc3 = threshold_constants(3)
    assert tc3.beta == Fraction(44, 3) and tc3.alpha == Fraction(40, 3) and tc3.gamma == 16
    for m in range(2, 9):
        assert all(threshold_constants(m).identities.values())
    with pytest.raises(ValueError):
        threshold_constants(1)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_cp_threshold(m):
    assert alpha_threshold(const_hsc(m, 4.0)) == pytest.approx(1.5 * (m * m - 1), abs=1e-9)
