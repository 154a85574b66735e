"""Symmetric two-tensors, algebraic curvature tensors and the second-kind form.

Index convention: ``R[i, j, k, l] = R(e_i, e_j, e_k, e_l)`` with
``R(X, Y, X, Y)`` the (unnormalized) sectional curvature, so the unit round
sphere has ``R[i, j, i, j] = +1`` for ``i != j``.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels

CONVENTION = "sectional-positive"
BIANCHI_RTOL = 1e-10


class DimensionError(ValueError):
    """Operands live on spaces of different dimension."""


def traceless_dim(n):
    """Dimension ``(n-1)(n+2)/2`` of the traceless symmetric two-tensors."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return (n - 1) * (n + 2) // 2


@dataclass(frozen=True)
class SpaceDim:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"real dimension must be an integer >= 2, got {self.n}")

    @property
    def N(self):
        return traceless_dim(self.n)


@dataclass(frozen=True, eq=False)
class SymTwoTensor:
    """An ``n x n`` symmetric matrix, optionally flagged traceless."""

    entries: np.ndarray
    traceless: bool = False

    # numpy scalars defer to __rmul__ instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self):
        A = np.array(self.entries, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {A.shape}")
        # upper triangle is canonical
        A = np.triu(A) + np.triu(A, 1).T
        if self.traceless:
            tr = np.trace(A)
            if abs(tr) > 1e-12 * (1.0 + np.abs(A).max(initial=0.0)):
                raise ValueError(f"tensor flagged traceless has trace {tr:.3e}")
        A.setflags(write=False)
        object.__setattr__(self, "entries", A)

    @property
    def n(self):
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __add__(self, other):
        return SymTwoTensor(self.entries + _entries(other))

    def __sub__(self, other):
        return SymTwoTensor(self.entries - _entries(other))

    def __mul__(self, scalar):
        return SymTwoTensor(float(scalar) * self.entries, self.traceless)

    __rmul__ = __mul__

    def norm(self):
        return float(np.sqrt(inner_sym(self, self)))


def _entries(A):
    if isinstance(A, SymTwoTensor):
        return A.entries
    return np.asarray(A, dtype=float)


# -- canonical storage of curvature tensors ------------------------------------

# (permutation of slots, sign) for the 8 elements of the symmetry group
_ORBIT = (
    ((0, 1, 2, 3), 1.0),
    ((1, 0, 2, 3), -1.0),
    ((0, 1, 3, 2), -1.0),
    ((1, 0, 3, 2), 1.0),
    ((2, 3, 0, 1), 1.0),
    ((3, 2, 0, 1), -1.0),
    ((2, 3, 1, 0), -1.0),
    ((3, 2, 1, 0), 1.0),
)


@lru_cache(maxsize=None)
def canonical_indices(n):
    """Index quadruples with ``i<j``, ``k<l`` and ``(i,j) <= (k,l)`` lexicographically."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    quads = [p + q for a, p in enumerate(pairs) for q in pairs[a:]]
    arr = np.array(quads, dtype=np.intp).reshape(-1, 4)
    arr.setflags(write=False)
    return arr


def canonicalize(R):
    """Project onto the antisymmetric, pair-symmetric tensors with exact write-through.

    Each orbit value is the signed mean of its 8 members (pairwise summed, so a
    tensor that already has the symmetries is reproduced bitwise) and is then
    written to every member of the orbit.
    """
    R = np.asarray(R, dtype=float)
    if R.ndim != 4 or len(set(R.shape)) != 1:
        raise DimensionError(f"expected an n^4 array, got shape {R.shape}")
    n = R.shape[0]
    idx = canonical_indices(n)
    out = np.zeros_like(R)
    if len(idx) == 0:
        return out
    terms = []
    for perm, sign in _ORBIT:
        q = idx[:, perm]
        terms.append(sign * R[q[:, 0], q[:, 1], q[:, 2], q[:, 3]])
    vals = ((terms[0] + terms[1]) + (terms[2] + terms[3])) + ((terms[4] + terms[5]) + (terms[6] + terms[7]))
    vals = vals / 8.0
    for perm, sign in _ORBIT:
        q = idx[:, perm]
        out[q[:, 0], q[:, 1], q[:, 2], q[:, 3]] = sign * vals
    return out


@dataclass(frozen=True, eq=False)
class CurvatureOperator:
    """Dense ``n^4`` algebraic curvature tensor in canonical storage.

    Antisymmetries and pair symmetry hold exactly after construction; the first
    Bianchi identity is validated against ``BIANCHI_RTOL`` unless ``check`` is
    false.
    """

    R: np.ndarray
    convention: str = CONVENTION
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.convention != CONVENTION:
            raise ValueError(f"unsupported convention {self.convention!r}")
        R = canonicalize(self.R)
        R.setflags(write=False)
        object.__setattr__(self, "R", R)
        if self.check:
            res = bianchi_residual(self)
            if res > BIANCHI_RTOL * self.scale:
                raise ValueError(f"first Bianchi residual {res:.3e} exceeds tolerance")

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros((n, n, n, n)))

    @classmethod
    def from_components(cls, n, components, check=True):
        """Build from ``{(i, j, k, l): value}`` (0-based); each write fills its orbit."""
        R = np.zeros((n, n, n, n))
        for (i, j, k, l), v in components.items():
            for perm, sign in _ORBIT:
                q = (i, j, k, l)
                R[q[perm[0]], q[perm[1]], q[perm[2]], q[perm[3]]] = sign * v
        return cls(R, check=check)

    @property
    def n(self):
        return self.R.shape[0]

    @property
    def N(self):
        return traceless_dim(self.n)

    @property
    def scale(self):
        return 1.0 + float(np.abs(self.R).max(initial=0.0))

    def __call__(self, X, Y, Z, W):
        """Evaluate ``R(X, Y, Z, W)`` on vectors."""
        return float(np.einsum("ijkl,i,j,k,l->", self.R, X, Y, Z, W, optimize=True))

    def __add__(self, other):
        _same_dim(self, other)
        return CurvatureOperator(self.R + other.R)

    def __sub__(self, other):
        _same_dim(self, other)
        return CurvatureOperator(self.R - other.R)

    def __mul__(self, scalar):
        return CurvatureOperator(float(scalar) * self.R)

    __rmul__ = __mul__

    def __neg__(self):
        return CurvatureOperator(-self.R)


def _same_dim(a, b):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def _tensor_of(R):
    if isinstance(R, CurvatureOperator):
        return R.R
    if hasattr(R, "base"):
        return R.base.R
    return np.asarray(R, dtype=float)


@dataclass(frozen=True)
class Scalars:
    S: float
    Ric: np.ndarray


# -- operations -----------------------------------------------------------------

def sym_product(u, v):
    """``u (.) v = u (x) v + v (x) u``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionError(f"vector shapes differ: {u.shape} vs {v.shape}")
    return SymTwoTensor(np.outer(u, v) + np.outer(v, u))


def inner_sym(A, B):
    """``<A, B> = tr(A^T B)``."""
    a, b = _entries(A), _entries(B)
    if a.shape != b.shape:
        raise DimensionError(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


def apply_second_kind(R, phi):
    """``Rbar(phi)_ij = sum_kl R_iklj phi_kl``."""
    T = _tensor_of(R)
    p = _entries(phi)
    if p.shape != T.shape[:2]:
        raise DimensionError(f"tensor has n={p.shape[0]}, curvature has n={T.shape[0]}")
    return SymTwoTensor(np.einsum("iklj,kl->ij", T, p))


def ring_R(R, phi, psi):
    """``Rring(phi, psi) = sum_ijkl R_ijkl phi_il psi_jk``."""
    T = _tensor_of(R)
    p, q = _entries(phi), _entries(psi)
    if p.shape != T.shape[:2] or q.shape != T.shape[:2]:
        raise DimensionError("symmetric tensors and curvature tensor differ in dimension")
    return float(np.einsum("ijkl,il,jk->", T, p, q, optimize=True))


def ring_matrix(R, tensors):
    """Gram-type matrix ``M[a, b] = Rring(tensors[a], tensors[b])``, symmetrized."""
    T = _tensor_of(R)
    B = np.asarray([_entries(t) for t in tensors]) if not isinstance(tensors, np.ndarray) else tensors
    if B.shape[1:] != T.shape[:2]:
        raise DimensionError("basis and curvature tensor differ in dimension")
    M = kernels.ring_matrix(T, B)
    return 0.5 * (M + M.T)


def bianchi_residual(R):
    """``max |R_ijkl + R_jkil + R_kijl|``."""
    T = _tensor_of(R)
    b = T + np.transpose(T, (2, 0, 1, 3)) + np.transpose(T, (1, 2, 0, 3))
    return float(np.abs(b).max(initial=0.0))


def ricci_and_scalar(R):
    """Ricci tensor ``Ric(X, X) = sum_k R(X, e_k, X, e_k)`` and its trace."""
    T = _tensor_of(R)
    Ric = np.einsum("ikjk->ij", T)
    Ric = 0.5 * (Ric + Ric.T)
    return Scalars(S=float(np.trace(Ric)), Ric=Ric)


def probe_tensors(n, *indices):
    """Unit traceless probes on an orthonormal 2- or 4-frame of coordinate vectors.

    Four indices ``(i, j, k, l)`` give ``(h1+, h1-, h2)``; two indices give
    ``(h3, h4)``.
    """
    if len(indices) not in (2, 4):
        raise ValueError("probe_tensors takes 2 or 4 frame indices")
    if len(set(indices)) != len(indices):
        raise ValueError(f"frame indices must be distinct, got {indices}")
    if any(not 0 <= i < n for i in indices):
        raise ValueError(f"frame index out of range for n={n}: {indices}")
    e = np.eye(n)
    if len(indices) == 4:
        i, j, k, l = (e[x] for x in indices)
        h1p = 0.5 * (sym_product(i, j) + sym_product(k, l))
        h1m = 0.5 * (sym_product(i, j) - sym_product(k, l))
        h2 = 0.25 * (sym_product(i, i) + sym_product(j, j) - sym_product(k, k) - sym_product(l, l))
        out = [h1p, h1m, h2]
    else:
        i, j = (e[x] for x in indices)
        h3 = (1 / (2 * np.sqrt(2))) * (sym_product(i, i) - sym_product(j, j))
        h4 = (1 / np.sqrt(2)) * sym_product(i, j)
        out = [h3, h4]
    return [SymTwoTensor(h.entries, traceless=True) for h in out]
