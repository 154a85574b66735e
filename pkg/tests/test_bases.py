import numpy as np
import pytest

from secondkind.bases import (
    E_MINUS,
    E_PLUS,
    PRODUCT_EXTRA,
    BasisLabel,
    build_E_minus,
    build_E_plus,
    build_product_basis,
    closed_form_diagonals,
    diag_values,
    eta_sum_decomposition,
    iiJiJi_identity,
    kahler_basis,
    reference_basis,
    standard_basis,
)
from secondkind.kahler import random_unitary_frame, standard_frame
from secondkind.models import const_hsc, random_curvature
from secondkind.tensor_core import traceless_dim


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_kahler_basis_complete(m):
    F = random_unitary_frame(m, m)
    plus, minus = build_E_plus(F, m), build_E_minus(F, m)
    assert len(plus) == m * (m + 1) and len(minus) == m * m - 1
    assert (plus + minus).is_complete()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_product_basis_complete(m):
    F = random_unitary_frame(m + 1, 3)
    B = build_product_basis(F, m)
    assert B.is_complete()
    assert len(B.part(PRODUCT_EXTRA)) == 4 * m + 3
    assert len(B.part(E_PLUS)) == m * (m + 1) and len(B.part(E_MINUS)) == m * m - 1


@pytest.mark.parametrize("n", [2, 3, 5])
def test_standard_basis_complete(n):
    assert standard_basis(n).is_complete()
    assert len(standard_basis(n)) == traceless_dim(n)


def test_reference_basis_dispatch():
    assert reference_basis(const_hsc(2, 4.0)).labels[0].kind == "phi+"
    assert reference_basis(random_curvature(4, 0)).labels[0].kind == "e"


def test_labels():
    assert str(BasisLabel("phi+", (1, 2))) == "phi+_12"
    assert str(BasisLabel("zeta")) == "zeta"
    B = kahler_basis(2)
    assert B.index(BasisLabel("theta", (3,))) == 4


def test_incomplete_detected():
    B = kahler_basis(2)
    assert not B.subset(range(len(B) - 1)).is_complete()


def test_cp_diagonals():
    # on CP^m(4): E+ diagonal 4, E- diagonal -2
    K = const_hsc(3, 4.0)
    F = random_unitary_frame(3, 1)
    for v in diag_values(K, build_E_plus(F, 3)).values():
        assert v == pytest.approx(4.0)
    for v in diag_values(K, build_E_minus(F, 3)).values():
        assert v == pytest.approx(-2.0)


def test_closed_forms_and_identities(kahler3):
    for s, K in enumerate(kahler3[:4]):
        F = random_unitary_frame(3, s)
        vals = diag_values(K, kahler_basis(3, F))
        for lbl, v in closed_form_diagonals(K, F).items():
            assert vals[lbl] == pytest.approx(v, abs=1e-10 * K.scale)
        eta = eta_sum_decomposition(K, F)
        assert eta.residual <= 1e-10 * K.scale
        c = iiJiJi_identity(K, 1, 3, F)
        assert c.residual <= 1e-10 * K.scale


def test_diag_sums(kahler2):
    for K in kahler2:
        vals = diag_values(K, build_E_plus(standard_frame(2), 2))
        assert sum(vals.values()) == pytest.approx(K.scalar, abs=1e-10)


def test_iiJiJi_index_check():
    with pytest.raises(ValueError):
        iiJiJi_identity(const_hsc(2, 4.0), 0, 1)
