"""Complex structures, the Kahler condition and Kahler curvature functionals.

Vectors live in the adapted real frame ``(e_1..e_m, Je_1..Je_m)`` with
``J e_i = e_{m+i}`` and ``J e_{m+i} = -e_i``. A *frame* is an ``n x n`` array
whose columns are ``f_1..f_m, Jf_1..Jf_m``.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .tensor_core import CurvatureOperator, DimensionError, ricci_and_scalar

KAHLER_RTOL = 1e-8
UNIT_TOL = 1e-10


class NotKahlerError(ValueError):
    def __init__(self, residual, scale):
        self.residual = residual
        self.scale = scale
        super().__init__(f"not Kahler: residual {residual:.3e} (scale {scale:.3e})")


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"complex dimension must be >= 1, got {self.m}")

    @property
    def n(self):
        return 2 * self.m

    @cached_property
    def J(self):
        m = self.m
        J = np.zeros((2 * m, 2 * m))
        J[m:, :m] = np.eye(m)
        J[:m, m:] = -np.eye(m)
        J.setflags(write=False)
        return J

    def __call__(self, X):
        X = np.asarray(X, dtype=float)
        m = self.m
        # exact: J(x, y) = (-y, x)
        return np.concatenate([-X[..., m:], X[..., :m]], axis=-1)


def kahler_residual(R, J):
    """``max |R(X,Y,Z,W) - R(X,Y,JZ,JW)|`` over basis quadruples."""
    T = R.R
    JR = np.einsum("abpq,pc,qd->abcd", T, J.J, J.J)
    return float(np.abs(T - JR).max(initial=0.0))


@dataclass(frozen=True, eq=False)
class KahlerOperator:
    """A curvature operator that passed the Kahler check against ``J``."""

    base: CurvatureOperator
    J: ComplexStructure
    residual: float

    @property
    def R(self):
        return self.base.R

    @property
    def m(self):
        return self.J.m

    @property
    def n(self):
        return self.base.n

    @property
    def N(self):
        return self.base.N

    @property
    def scale(self):
        return self.base.scale

    def __call__(self, X, Y, Z, W):
        return self.base(X, Y, Z, W)

    @cached_property
    def _hsc_tensor(self):
        # T(X,X,X,X) = R(X,JX,X,JX), fully symmetrized
        T = np.einsum("apcq,pb,qd->abcd", self.R, self.J.J, self.J.J)
        return _symmetrize4(T)

    @cached_property
    def _bisec_tensor(self):
        # P(X,X,Y,Y) = R(X,JX,Y,JY), symmetric in (a,b) and in (c,d)
        P = np.einsum("apcq,pb,qd->abcd", self.R, self.J.J, self.J.J)
        P = 0.5 * (P + P.transpose(1, 0, 2, 3))
        return 0.5 * (P + P.transpose(0, 1, 3, 2))

    @cached_property
    def ricci(self):
        """Ricci form from the Kahler trace ``Ric(X,Y) = sum_i R(X,JY,e_i,Je_i)``."""
        m = self.m
        e = np.eye(self.n)
        Jcols = self.J.J
        Ric = np.zeros((self.n, self.n))
        for i in range(m):
            Ric += np.einsum("apcd,pb,c,d->ab", self.R, Jcols, e[i], Jcols[:, i])
        return 0.5 * (Ric + Ric.T)

    @property
    def scalar(self):
        return float(np.trace(self.ricci))

    def __neg__(self):
        return KahlerOperator(-self.base, self.J, self.residual)

    def __mul__(self, c):
        return KahlerOperator(float(c) * self.base, self.J, abs(float(c)) * self.residual)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.m != self.m:
            raise DimensionError(f"complex dimensions differ: {self.m} vs {other.m}")
        return KahlerOperator(self.base + other.base, self.J, self.residual + other.residual)


def _symmetrize4(T):
    from itertools import permutations

    return sum(T.transpose(p) for p in permutations(range(4))) / 24.0


def kahler_check(R, J=None, rtol=KAHLER_RTOL):
    """Wrap ``R`` as a :class:`KahlerOperator` or raise :class:`NotKahlerError`."""
    if R.n % 2:
        raise DimensionError(f"Kahler operators need even real dimension, got n={R.n}")
    if J is None:
        J = ComplexStructure(R.n // 2)
    if J.n != R.n:
        raise DimensionError(f"J acts on dimension {J.n}, R on {R.n}")
    res = kahler_residual(R, J)
    if res > rtol * R.scale:
        raise NotKahlerError(res, R.scale)
    return KahlerOperator(R, J, res)


# -- pointwise functionals ------------------------------------------------------

def _unit(X, name="X"):
    X = np.asarray(X, dtype=float)
    if abs(np.linalg.norm(X) - 1.0) > UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector, |{name}| = {np.linalg.norm(X):.12g}")
    return X


def _nonzero(X):
    X = np.asarray(X, dtype=float)
    if not np.any(X):
        raise ValueError("X must be nonzero")
    return X


def hsc(K, X):
    """Holomorphic sectional curvature ``R(X, JX, X, JX)`` of a unit vector."""
    X = _unit(X)
    JX = K.J(X)
    return K(X, JX, X, JX)


def orth_bisec(K, X, Y):
    """Orthogonal bisectional curvature ``R(X, JX, Y, JY)``."""
    X, Y = _unit(X), _unit(Y, "Y")
    if abs(X @ Y) > UNIT_TOL:
        raise ValueError(f"g(X, Y) = {X @ Y:.3e} must vanish")
    if abs(X @ K.J(Y)) > UNIT_TOL:
        raise ValueError(f"g(X, JY) = {X @ K.J(Y):.3e} must vanish")
    return K(X, K.J(X), Y, K.J(Y))


def ric_perp(K, X):
    """Orthogonal Ricci curvature ``Ric(X,X) - R(X,JX,X,JX)/|X|^2``."""
    return mixed_c(K, 1.0, -1.0, X)


def mixed_c(K, a, b, X):
    """Real form of the mixed curvature ``a Ric(X,X) + b R(X,JX,X,JX)/|X|^2``."""
    X = _nonzero(X)
    JX = K.J(X)
    return float(a * (X @ K.ricci @ X) + b * K(X, JX, X, JX) / (X @ X))


# -- frames ---------------------------------------------------------------------

def random_unitary_frame(m, seed):
    """Columns ``f_1..f_m, Jf_1..Jf_m`` from a Haar-random unitary matrix."""
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2)
    Q, Rq = np.linalg.qr(Z)
    d = np.diag(Rq)
    Q = Q * (d / np.abs(d))
    F = np.concatenate([Q.real, Q.imag], axis=0)
    J = ComplexStructure(m)
    return np.concatenate([F, J(F.T).T], axis=1)


def standard_frame(m):
    return np.eye(2 * m)


def check_frame(frame, m, tol=1e-10):
    """Validate an adapted unitary frame, raising ``ValueError`` when it is not one."""
    F = np.asarray(frame, dtype=float)
    if F.shape != (2 * m, 2 * m):
        raise DimensionError(f"frame for m={m} must be {2 * m}x{2 * m}, got {F.shape}")
    if np.abs(F.T @ F - np.eye(2 * m)).max() > tol:
        raise ValueError("frame is not orthonormal")
    J = ComplexStructure(m)
    if np.abs(F[:, m:] - J(F[:, :m].T).T).max() > tol:
        raise ValueError("frame is not J-adapted: f_{m+i} != J f_i")
    return F


# -- sampled extremes ------------------------------------------------------------

FUNCTIONALS = ("hsc", "orth_bisec", "ric_perp", "mixed")
DESCENT_STEPS = 20


@dataclass(frozen=True)
class FunctionalExtremes:
    functional: str
    min: float
    max: float
    argmin: np.ndarray
    argmax: np.ndarray
    samples: int
    seed: int


@dataclass(frozen=True)
class CurvatureFunctionalReport:
    entries: dict
    samples: int
    seed: int

    def __getitem__(self, name):
        return self.entries[name]


def _batch_values_grads(K, fid, X, Y=None):
    """Values and Euclidean gradients of a functional on unit rows of ``X``."""
    if fid == "hsc":
        T = K._hsc_tensor
        g = kernels.contract_last3(T, X, X, X)
        return np.einsum("sa,sa->s", g, X), 4.0 * g
    if fid in ("ric_perp", "mixed"):
        a = 1.0 if fid == "ric_perp" else 2.0
        T = K._hsc_tensor
        g = kernels.contract_last3(T, X, X, X)
        q = np.einsum("sa,sa->s", g, X)
        RX = X @ K.ricci
        r = np.einsum("sa,sa->s", RX, X)
        # on the unit sphere the tangential gradient ignores the |X| normalization
        return a * r - q, 2.0 * a * RX - 4.0 * g
    if fid == "orth_bisec":
        P = K._bisec_tensor
        gX = kernels.contract_last3(P, X, Y, Y)
        val = np.einsum("sa,sa->s", gX, X)
        gY = kernels.contract_last3(P.transpose(2, 3, 0, 1), Y, X, X)
        return val, (2.0 * gX, 2.0 * gY)
    raise ValueError(f"unknown functional {fid!r}; choose from {FUNCTIONALS}")


def _normalize_rows(X):
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _admissible_pair(K, X, Y):
    """Project ``Y`` onto the complement of ``span{X, JX}`` and normalize."""
    JX = K.J(X)
    Y = Y - np.sum(Y * X, axis=1, keepdims=True) * X - np.sum(Y * JX, axis=1, keepdims=True) * JX
    return _normalize_rows(Y)


def _initial_points(K, fid, samples, rng):
    n, m = K.n, K.m
    if fid == "orth_bisec":
        if m < 2:
            raise ValueError("orthogonal bisectional curvature needs m >= 2")
        # coordinate pairs plus Gaussian pairs projected to admissible ones
        # (same law as the first two columns of a Haar unitary frame)
        pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
        e = np.eye(n)
        X0 = np.array([e[i] for i, _ in pairs])
        Y0 = np.array([e[j] for _, j in pairs])
        X = _normalize_rows(rng.standard_normal((samples, n)))
        Y = _admissible_pair(K, X, rng.standard_normal((samples, n)))
        return np.vstack([X0, X]), np.vstack([Y0, Y])
    X = _normalize_rows(rng.standard_normal((samples, n)))
    return np.vstack([np.eye(n), X]), None


def _refine(K, fid, X, Y, sign, scale):
    """Fixed-schedule projected descent of ``sign * functional``; keeps improvements only."""
    val, grad = _batch_values_grads(K, fid, X, Y)
    for it in range(DESCENT_STEPS):
        step = 0.1 / (1 + it) / scale
        if fid == "orth_bisec":
            gX, gY = grad
            gX = gX - np.sum(gX * X, axis=1, keepdims=True) * X
            gY = gY - np.sum(gY * Y, axis=1, keepdims=True) * Y
            Xn = _normalize_rows(X - sign * step * gX)
            Yn = _admissible_pair(K, Xn, Y - sign * step * gY)
        else:
            g = grad - np.sum(grad * X, axis=1, keepdims=True) * X
            Xn = _normalize_rows(X - sign * step * g)
            Yn = None
        vn, gn = _batch_values_grads(K, fid, Xn, Yn)
        better = sign * vn < sign * val
        X = np.where(better[:, None], Xn, X)
        if Yn is not None:
            Y = np.where(better[:, None], Yn, Y)
            grad = (np.where(better[:, None], gn[0], grad[0]), np.where(better[:, None], gn[1], grad[1]))
        else:
            grad = np.where(better[:, None], gn, grad)
        val = np.where(better, vn, val)
    return val, X, Y


def functional_extremes(K, functional, samples=2000, seed=0):
    """Sampled min/max of a Kahler curvature functional.

    Starting points are the coordinate directions of the adapted frame plus
    ``samples`` random unit vectors (random unitary two-frames for
    ``orth_bisec``), each refined by 20 projected descent steps with step
    ``0.1/(1+k)`` relative to the tensor scale. The minimum is an upper
    bound on the true minimum (and the maximum a lower bound on the true
    maximum).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng((seed, FUNCTIONALS.index(functional)))
    X, Y = _initial_points(K, functional, samples, rng)
    scale = K.scale
    lo, Xlo, Ylo = _refine(K, functional, X, Y, 1.0, scale)
    hi, Xhi, Yhi = _refine(K, functional, X, Y, -1.0, scale)
    a, b = int(np.argmin(lo)), int(np.argmax(hi))

    def _arg(Xs, Ys, i):
        return Xs[i].copy() if Ys is None else np.stack([Xs[i], Ys[i]])

    return FunctionalExtremes(
        functional, float(lo[a]), float(hi[b]), _arg(Xlo, Ylo, a), _arg(Xhi, Yhi, b), samples, seed
    )


def curvature_report(K, samples=2000, seed=0, functionals=None):
    if functionals is None:
        functionals = FUNCTIONALS if K.m >= 2 else ("hsc", "ric_perp", "mixed")
    return CurvatureFunctionalReport(
        {f: functional_extremes(K, f, samples, seed) for f in functionals}, samples, seed
    )


def general_ricci(K):
    """Ricci tensor from the general double trace, for cross-checks."""
    return ricci_and_scalar(K.base).Ric
