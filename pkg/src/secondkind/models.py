"""Concrete curvature operators: constant holomorphic sectional curvature,
spheres, flat factors, products, and random (Kahler) algebraic curvature
tensors drawn from the nullspace of the symmetry constraints.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .kahler import ComplexStructure, KahlerOperator, kahler_check, kahler_residual
from .spectral import threshold_from_spectrum, spectrum
from .tensor_core import CurvatureOperator, DimensionError, bianchi_residual


# -- closed-form models ------------------------------------------------------------

def const_hsc(m, c):
    """Kahler operator of constant holomorphic sectional curvature ``c`` on ``C^m``.

    ``R = c/4 [g(X,Z)g(Y,W) - g(X,W)g(Y,Z) + g(X,JZ)g(Y,JW) - g(X,JW)g(Y,JZ)
    + 2 g(X,JY)g(Z,JW)]``; ``c = 4`` is CP^m with the Fubini-Study metric.
    """
    J = ComplexStructure(m)
    g = np.eye(2 * m)
    w = np.asarray(J.J)  # w[a, b] = g(e_a, J e_b)
    R = (c / 4.0) * (
        np.einsum("ac,bd->abcd", g, g)
        - np.einsum("ad,bc->abcd", g, g)
        + np.einsum("ac,bd->abcd", w, w)
        - np.einsum("ad,bc->abcd", w, w)
        + 2.0 * np.einsum("ab,cd->abcd", w, w)
    )
    return kahler_check(CurvatureOperator(R), J)


def sphere(n, k=1.0):
    """Constant sectional curvature ``k``: ``R = k (g(X,Z)g(Y,W) - g(X,W)g(Y,Z))``."""
    if n < 2:
        raise ValueError(f"sphere needs n >= 2, got {n}")
    g = np.eye(n)
    R = k * (np.einsum("ac,bd->abcd", g, g) - np.einsum("ad,bc->abcd", g, g))
    return CurvatureOperator(R)


def flat(n):
    if n < 1:
        raise ValueError(f"flat factor needs n >= 1, got {n}")
    return CurvatureOperator.zeros(n)


def flat_kahler(m):
    return kahler_check(flat(2 * m))


def product(*factors):
    """Riemannian product with factors on consecutive coordinate blocks."""
    if not factors:
        raise ValueError("product needs at least one factor")
    sizes = [f.n for f in factors]
    n = sum(sizes)
    R = np.zeros((n, n, n, n))
    start = 0
    for f, s in zip(factors, sizes):
        b = slice(start, start + s)
        R[b, b, b, b] = f.R if isinstance(f, CurvatureOperator) else f.base.R
        start += s
    return CurvatureOperator(R)


def block_product(n, blocks):
    """Product with explicit (disjoint) index blocks: ``blocks = [(indices, R_factor), ...]``."""
    seen = set()
    R = np.zeros((n, n, n, n))
    for idx, f in blocks:
        idx = list(idx)
        if seen.intersection(idx):
            raise DimensionError(f"overlapping blocks: {sorted(seen.intersection(idx))}")
        if len(idx) != f.n:
            raise DimensionError(f"block of size {len(idx)} for factor of dimension {f.n}")
        seen.update(idx)
        T = f.R
        R[np.ix_(idx, idx, idx, idx)] = T
    if seen != set(range(n)):
        raise DimensionError(f"blocks cover {sorted(seen)}, expected 0..{n - 1}")
    return CurvatureOperator(R)


def kahler_product(*factors):
    """Kahler product in the adapted frame of the total complex dimension.

    Factor ``p`` with complex dimension ``m_p`` occupies complex slots
    ``offset..offset+m_p-1``, i.e. real indices ``offset+i`` and ``m+offset+i``.
    """
    if not factors:
        raise ValueError("kahler_product needs at least one factor")
    m = sum(f.m for f in factors)
    blocks = []
    off = 0
    for f in factors:
        idx = [off + i for i in range(f.m)] + [m + off + i for i in range(f.m)]
        blocks.append((idx, f))
        off += f.m
    return kahler_check(block_product(2 * m, blocks), ComplexStructure(m))


def cp_times_flat(m):
    """``CP^m(4) x C``: complex dimension ``m + 1`` with the flat line last."""
    return kahler_product(const_hsc(m, 4.0), flat_kahler(1))


def cp_product(a, b, ratio=1.0):
    """``CP^a(4) x CP^b(4 ratio)``."""
    return kahler_product(const_hsc(a, 4.0), const_hsc(b, 4.0 * ratio))


# -- constraint nullspaces -----------------------------------------------------------

def _pair_basis(n):
    """Basis of the pair-symmetric, antisymmetric tensors (one per pair of 2-planes)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elems = []
    for a, (i, j) in enumerate(pairs):
        for (k, l) in pairs[a:]:
            T = np.zeros((n, n, n, n))
            for (p, q), (r, s) in (((i, j), (k, l)), ((k, l), (i, j))):
                T[p, q, r, s] = 1.0
                T[q, p, r, s] = -1.0
                T[p, q, s, r] = -1.0
                T[q, p, s, r] = 1.0
            elems.append(T)
    return np.array(elems)


def constraint_matrix(n, J=None):
    """Linear map from pair-symmetric coefficients to Bianchi (and J-invariance) defects."""
    P = _pair_basis(n)
    rows = [P + np.transpose(P, (0, 3, 1, 2, 4)) + np.transpose(P, (0, 2, 3, 1, 4))]
    if J is not None:
        JP = np.einsum("tabpq,pc,qd->tabcd", P, J, J)
        rows.append(P - JP)
    L = np.concatenate([r.reshape(len(P), -1) for r in rows], axis=1).T
    return L, P


@dataclass(frozen=True, eq=False)
class ConstraintSubspace:
    """Orthonormal basis (Frobenius) of a space of algebraic curvature tensors."""

    n: int
    m: object
    basis: np.ndarray  # (d, n, n, n, n)
    rank: int

    @property
    def dim(self):
        return self.basis.shape[0]


def _nullspace(n, J):
    L, P = constraint_matrix(n, J)
    # thin rank-revealing SVD; the full U of a tall L is never needed
    _, sv, Vt = scipy.linalg.svd(L, full_matrices=False, lapack_driver="gesdd")
    rank = int(np.sum(sv > 1e-10 * sv[0])) if sv.size else 0
    Z = Vt[rank:].T
    T = np.tensordot(Z.T, P, axes=1)
    flat_T = T.reshape(len(T), -1)
    Q, _ = np.linalg.qr(flat_T.T)
    basis = Q.T.reshape((-1,) + (n,) * 4)
    basis = np.array([CurvatureOperator(b).R for b in basis])
    return basis, rank


@lru_cache(maxsize=None)
def kahler_subspace(m):
    """All Kahler algebraic curvature tensors on ``C^m`` (cached, built on first use)."""
    basis, rank = _nullspace(2 * m, np.asarray(ComplexStructure(m).J))
    basis.setflags(write=False)
    return ConstraintSubspace(2 * m, m, basis, rank)


@lru_cache(maxsize=None)
def curvature_subspace(n):
    """All algebraic curvature tensors on ``R^n``."""
    basis, rank = _nullspace(n, None)
    basis.setflags(write=False)
    return ConstraintSubspace(n, None, basis, rank)


def random_kahler(m, seed):
    """Gaussian combination of the Kahler-subspace basis; deterministic in ``(m, seed)``."""
    sub = kahler_subspace(m)
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(sub.dim)
    R = np.tensordot(coeffs, sub.basis, axes=1)
    return kahler_check(CurvatureOperator(R), ComplexStructure(m))


def random_curvature(n, seed):
    """Random algebraic curvature tensor (no Kahler condition)."""
    sub = curvature_subspace(n)
    rng = np.random.default_rng(seed)
    R = np.tensordot(rng.standard_normal(sub.dim), sub.basis, axes=1)
    return CurvatureOperator(R)


def subspace_residuals(sub):
    """Worst Bianchi and Kahler residuals over the cached basis."""
    b = max(bianchi_residual(CurvatureOperator(T, check=False)) for T in sub.basis)
    k = 0.0
    if sub.m is not None:
        J = ComplexStructure(sub.m)
        k = max(kahler_residual(CurvatureOperator(T, check=False), J) for T in sub.basis)
    return b, k


# -- product scans ---------------------------------------------------------------------

@dataclass(frozen=True)
class ScanResult:
    m: int
    thresholds: dict
    best_ratio: float
    best_threshold: float


def scaled_product_scan(m, ratios):
    """Alpha-threshold of ``CP^{m-1}(4) x CP^1(4t)`` for each ratio ``t``."""
    if m < 2:
        raise ValueError("scaled_product_scan needs m >= 2")
    ratios = [float(t) for t in ratios]
    if not ratios:
        raise ValueError("empty ratio grid")
    out = {}
    for t in ratios:
        if t <= 0:
            raise ValueError(f"ratios must be positive, got {t}")
        out[t] = threshold_from_spectrum(spectrum(cp_product(m - 1, 1, t)))
    finite = {t: v for t, v in out.items() if v != "never"}
    best = min(finite, key=finite.get) if finite else None
    return ScanResult(m, out, best, finite[best] if finite else "never")


def is_kahler(R):
    return isinstance(R, KahlerOperator)


# -- model specifications ----------------------------------------------------------

MODEL_KINDS = ("const_hsc", "sphere", "flat", "product", "random_kahler")
_FACTOR_ALIASES = {"cp": "const_hsc", "sphere": "sphere", "flat": "flat", "random": "random_kahler"}


@dataclass(frozen=True)
class ModelSpec:
    """Declarative description of a zoo operator.

    ``params`` holds ``m``/``c`` (const_hsc), ``n``/``k`` (sphere), ``n``
    (flat), ``m``/``seed`` (random_kahler); ``factors`` is a tuple of specs
    for products.
    """

    kind: str
    params: tuple = ()
    factors: tuple = ()

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}; choose from {MODEL_KINDS}")
        if self.kind == "product" and not self.factors:
            raise ValueError("product needs at least one factor")

    @property
    def p(self):
        return dict(self.params)

    @classmethod
    def parse_factor(cls, token):
        """``cp:m:c``, ``sphere:n:k``, ``flat:n`` or ``random:m:seed``."""
        parts = token.strip().split(":")
        kind = _FACTOR_ALIASES.get(parts[0])
        try:
            if kind == "const_hsc" and len(parts) == 3:
                return cls(kind, (("m", int(parts[1])), ("c", float(parts[2]))))
            if kind == "sphere" and len(parts) == 3:
                return cls(kind, (("n", int(parts[1])), ("k", float(parts[2]))))
            if kind == "flat" and len(parts) == 2:
                return cls(kind, (("n", int(parts[1])),))
            if kind == "random_kahler" and len(parts) == 3:
                return cls(kind, (("m", int(parts[1])), ("seed", int(parts[2]))))
        except ValueError as exc:
            raise ValueError(f"bad factor {token!r}: {exc}") from None
        raise ValueError(f"bad factor {token!r}; expected cp:m:c, sphere:n:k, flat:n or random:m:seed")

    @classmethod
    def parse_product(cls, text):
        return cls("product", factors=tuple(cls.parse_factor(t) for t in text.split(",") if t.strip()))

    def build(self):
        p = self.p
        if self.kind == "const_hsc":
            if p["m"] < 1:
                raise ValueError("const_hsc needs m >= 1")
            return const_hsc(p["m"], p["c"])
        if self.kind == "sphere":
            return sphere(p["n"], p.get("k", 1.0))
        if self.kind == "flat":
            return flat(p["n"])
        if self.kind == "random_kahler":
            if p["m"] < 1:
                raise ValueError("random_kahler needs m >= 1")
            return random_kahler(p["m"], p["seed"])
        built = [f.build() for f in self.factors]
        if all(isinstance(f, KahlerOperator) for f in built):
            return kahler_product(*built)
        return product(*built)

    def __str__(self):
        if self.kind == "product":
            return " x ".join(str(f) for f in self.factors)
        return self.kind + "(" + ", ".join(f"{k}={v:g}" for k, v in self.params) + ")"


def zoo():
    """Named concrete operators with known spectra, in a fixed order."""
    out = {}
    for m in (1, 2, 3):
        out[f"CP{m}(4)"] = const_hsc(m, 4.0)
        out[f"CH{m}(-4)"] = const_hsc(m, -4.0)
    out["C2(flat)"] = flat_kahler(2)
    out["S2xR"] = product(sphere(2, 1.0), flat(1))
    out["S3(1)"] = sphere(3, 1.0)
    out["CP1xCP1"] = cp_product(1, 1)
    out["CP2xCP1"] = cp_product(2, 1)
    out["CP1xC"] = cp_times_flat(1)
    out["CP2xC"] = cp_times_flat(2)
    return out
