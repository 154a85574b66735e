"""Labelled orthonormal bases of the traceless symmetric two-tensors.

Every element is assembled from :func:`sym_product` of frame vectors and
scalar coefficients, never from simplified closed forms, so the diagonal
identities checked against them are independent of their construction.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .kahler import check_frame, standard_frame
from .tensor_core import DimensionError, ring_R, sym_product, traceless_dim

E_PLUS = "E+"
E_MINUS = "E-"
PRODUCT_EXTRA = "product-extra"
GENERIC = "generic"


class BasisLabel(NamedTuple):
    kind: str
    indices: tuple = ()

    def __str__(self):
        return self.kind + "_" + "".join(str(i) for i in self.indices) if self.indices else self.kind


@dataclass(frozen=True, eq=False)
class TracelessBasis:
    labels: tuple
    tensors: np.ndarray  # (count, n, n)
    partitions: tuple

    def __post_init__(self):
        t = np.asarray(self.tensors, dtype=float)
        t.setflags(write=False)
        object.__setattr__(self, "tensors", t)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.tensors))

    @property
    def n(self):
        return self.tensors.shape[1]

    def gram(self):
        flat = self.tensors.reshape(len(self), -1)
        return flat @ flat.T

    def part(self, partition):
        keep = [i for i, p in enumerate(self.partitions) if p == partition]
        return self.subset(keep)

    def subset(self, keep):
        keep = list(keep)
        return TracelessBasis(
            tuple(self.labels[i] for i in keep),
            self.tensors[keep] if keep else np.zeros((0, self.n, self.n)),
            tuple(self.partitions[i] for i in keep),
        )

    def __add__(self, other):
        return TracelessBasis(
            self.labels + other.labels,
            np.concatenate([self.tensors, other.tensors]),
            self.partitions + other.partitions,
        )

    def index(self, label):
        return self.labels.index(label)

    def projector(self):
        flat = self.tensors.reshape(len(self), -1)
        return flat.T @ flat

    def is_complete(self, tol=1e-10):
        N = traceless_dim(self.n)
        if len(self) != N:
            return False
        traces = np.einsum("aii->a", self.tensors)
        return bool(np.abs(self.gram() - np.eye(N)).max() <= tol and np.abs(traces).max() <= tol)


def _make(entries, partition):
    labels = tuple(lbl for lbl, _ in entries)
    if entries:
        tensors = np.array([np.asarray(t.entries) for _, t in entries])
    else:
        tensors = np.zeros((0, 0, 0))
    return TracelessBasis(labels, tensors, (partition,) * len(labels))


def _split_frame(frame, m):
    F = check_frame(frame, m)
    return F[:, :m], F[:, m:]


def build_E_plus(frame, m):
    """Orthonormal basis of ``E+``: ``phi+_ij``, ``psi+_ij`` (i<j), ``theta_1..theta_2m``."""
    e, Je = _split_frame(frame, m)
    return _make(_e_plus(e, Je), E_PLUS)


def _e_plus(e, Je):
    m = e.shape[1]
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    out = []
    for i, j in pairs:
        t = 0.5 * (sym_product(e[:, i], e[:, j]) - sym_product(Je[:, i], Je[:, j]))
        out.append((BasisLabel("phi+", (i + 1, j + 1)), t))
    for i, j in pairs:
        t = 0.5 * (sym_product(e[:, i], Je[:, j]) + sym_product(Je[:, i], e[:, j]))
        out.append((BasisLabel("psi+", (i + 1, j + 1)), t))
    for i in range(m):
        t = (1 / (2 * np.sqrt(2))) * (sym_product(e[:, i], e[:, i]) - sym_product(Je[:, i], Je[:, i]))
        out.append((BasisLabel("theta", (i + 1,)), t))
    for i in range(m):
        t = (1 / np.sqrt(2)) * sym_product(e[:, i], Je[:, i])
        out.append((BasisLabel("theta", (m + i + 1,)), t))
    return out


def _holomorphic_trace(e, Je, i):
    return sym_product(e[:, i], e[:, i]) + sym_product(Je[:, i], Je[:, i])


def build_E_minus(frame, m):
    """Orthonormal basis of ``E-``: ``phi-_ij``, ``psi-_ij`` (i<j), ``eta_1..eta_{m-1}``."""
    e, Je = _split_frame(frame, m)
    return _minus_basis(_e_minus(e, Je), 2 * m)


def _minus_basis(entries, n):
    if not entries:
        return TracelessBasis((), np.zeros((0, n, n)), ())
    return _make(entries, E_MINUS)


def _e_minus(e, Je):
    m = e.shape[1]
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    out = []
    for i, j in pairs:
        t = 0.5 * (sym_product(e[:, i], e[:, j]) + sym_product(Je[:, i], Je[:, j]))
        out.append((BasisLabel("phi-", (i + 1, j + 1)), t))
    for i, j in pairs:
        t = 0.5 * (sym_product(e[:, i], Je[:, j]) - sym_product(Je[:, i], e[:, j]))
        out.append((BasisLabel("psi-", (i + 1, j + 1)), t))
    for k in range(1, m):
        c = 1 / np.sqrt(8 * k * (k + 1))
        t = (k * c) * _holomorphic_trace(e, Je, k)
        for i in range(k):
            t = t - c * _holomorphic_trace(e, Je, i)
        out.append((BasisLabel("eta", (k,)), t))
    return out


def kahler_basis(m, frame=None):
    """``E+`` followed by ``E-`` for the given (default: standard) frame."""
    frame = standard_frame(m) if frame is None else frame
    return build_E_plus(frame, m) + build_E_minus(frame, m)


def build_product_basis(frame, m):
    """Basis of ``S^2_0`` on complex dimension ``m+1`` split as ``V0 + V1``.

    ``frame`` has columns ``e_0..e_m, Je_0..Je_m``; ``V0 = span{e_0, Je_0}``.
    Order: ``E+(V1)``, ``E-(V1)``, ``tau_1, tau_2``, ``h_1..h_4m``, ``zeta``.
    Frame indices in labels are 1-based on ``V1`` (so ``e_1`` is column 1).
    """
    if m < 1:
        raise ValueError("product basis needs m >= 1 (complex dimension m+1 >= 2)")
    F = check_frame(frame, m + 1)
    n = 2 * (m + 1)
    e0, Je0 = F[:, 0], F[:, m + 1]
    e, Je = F[:, 1 : m + 1], F[:, m + 2 :]
    plus = _make(_e_plus(e, Je), E_PLUS)
    minus = _minus_basis(_e_minus(e, Je), n)

    extra = []
    extra.append((BasisLabel("tau", (1,)), (1 / (2 * np.sqrt(2))) * (sym_product(e0, e0) - sym_product(Je0, Je0))))
    extra.append((BasisLabel("tau", (2,)), (1 / np.sqrt(2)) * sym_product(e0, Je0)))
    s = 1 / np.sqrt(2)
    for block, (u, vs) in enumerate([(e0, e), (e0, Je), (Je0, e), (Je0, Je)]):
        for i in range(m):
            extra.append((BasisLabel("h", (block * m + i + 1,)), s * sym_product(u, vs[:, i])))
    c = 1 / np.sqrt(8 * m * (m + 1))
    z = (m * c) * (sym_product(e0, e0) + sym_product(Je0, Je0))
    for i in range(m):
        z = z - c * (sym_product(e[:, i], e[:, i]) + sym_product(Je[:, i], Je[:, i]))
    extra.append((BasisLabel("zeta"), z))
    basis = plus + minus + _make(extra, PRODUCT_EXTRA)
    assert basis.n == n
    return basis


def standard_basis(n):
    """Orthonormal basis of ``S^2_0(R^n)`` from coordinate vectors.

    Off-diagonal elements ``e_i (.) e_j / sqrt 2`` (kind ``"e"``), then the
    diagonal Helmert-type elements (kind ``"d"``).
    """
    traceless_dim(n)
    I = np.eye(n)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append((BasisLabel("e", (i + 1, j + 1)), (1 / np.sqrt(2)) * sym_product(I[i], I[j])))
    for k in range(1, n):
        t = -k * sym_product(I[k], I[k])
        for i in range(k):
            t = t + sym_product(I[i], I[i])
        out.append((BasisLabel("d", (k,)), (1 / np.sqrt(4 * k * (k + 1))) * t))
    return _make(out, GENERIC)


def reference_basis(R):
    """Kahler basis for Kahler operators, coordinate basis otherwise."""
    if hasattr(R, "J"):
        return kahler_basis(R.m)
    return standard_basis(R.n)


# -- diagonal evaluations ---------------------------------------------------------

def diag_values(R, basis):
    """``{label: Rring(phi, phi)}`` for every element of ``basis``."""
    if basis.n != R.n:
        raise DimensionError(f"basis lives on n={basis.n}, operator on n={R.n}")
    return {lbl: ring_R(R, t, t) for lbl, t in basis}


def _hol(K, F, m, i, j):
    """``R(e_i, Je_i, e_j, Je_j)`` for 0-based frame indices."""
    return K(F[:, i], F[:, m + i], F[:, j], F[:, m + j])


def closed_form_diagonals(K, frame=None):
    """Closed-form diagonal values for the ``E+ / E-`` basis of ``frame``.

    theta_i, theta_{m+i}: R(e_i,Je_i,e_i,Je_i); phi+/psi+: 2R(e_i,Je_i,e_j,Je_j);
    phi-: -2R(e_i,Je_j,e_i,Je_j); psi-: -2R(e_i,e_j,e_i,e_j).
    """
    m = K.m
    F = standard_frame(m) if frame is None else check_frame(frame, m)
    e, Je = F[:, :m], F[:, m:]
    out = {}
    for i in range(m):
        for j in range(i + 1, m):
            b = 2 * _hol(K, F, m, i, j)
            out[BasisLabel("phi+", (i + 1, j + 1))] = b
            out[BasisLabel("psi+", (i + 1, j + 1))] = b
            out[BasisLabel("phi-", (i + 1, j + 1))] = -2 * K(e[:, i], Je[:, j], e[:, i], Je[:, j])
            out[BasisLabel("psi-", (i + 1, j + 1))] = -2 * K(e[:, i], e[:, j], e[:, i], e[:, j])
    for i in range(m):
        h = _hol(K, F, m, i, i)
        out[BasisLabel("theta", (i + 1,))] = h
        out[BasisLabel("theta", (m + i + 1,))] = h
    return out


@dataclass(frozen=True)
class IdentityCheck:
    lhs: float
    rhs: float

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)


def eta_sum_decomposition(K, frame=None):
    """``sum_k Rring(eta_k, eta_k)`` against its expansion in holomorphic terms.

    rhs = -((m-1)/m) sum_i R(e_i,Je_i,e_i,Je_i) + (2/m) sum_{i<j} R(e_i,Je_i,e_j,Je_j)
    """
    m = K.m
    if m < 2:
        raise ValueError("eta elements need m >= 2")
    F = standard_frame(m) if frame is None else frame
    minus = build_E_minus(F, m)
    vals = diag_values(K, minus)
    lhs = sum(v for lbl, v in vals.items() if lbl.kind == "eta")
    H = sum(_hol(K, F, m, i, i) for i in range(m))
    B = sum(_hol(K, F, m, i, j) for i in range(m) for j in range(i + 1, m))
    rhs = -(m - 1) / m * H + 2 / m * B
    return IdentityCheck(lhs, rhs)


def iiJiJi_identity(K, i, j, frame=None):
    """``Rring(e_i.e_i + Je_i.Je_i, e_j.e_j + Je_j.Je_j)`` vs ``-8 R(e_i,Je_i,e_j,Je_j)``.

    ``i`` and ``j`` are 1-based.
    """
    m = K.m
    if not (1 <= i <= m and 1 <= j <= m):
        raise ValueError(f"indices must lie in 1..{m}, got ({i}, {j})")
    F = standard_frame(m) if frame is None else check_frame(frame, m)
    e, Je = F[:, :m], F[:, m:]
    a = _holomorphic_trace(e, Je, i - 1)
    b = _holomorphic_trace(e, Je, j - 1)
    return IdentityCheck(ring_R(K, a, b), -8 * _hol(K, F, m, i - 1, j - 1))
