"""Matrix of the second-kind form, its spectrum, and fractional alpha-positivity.

Whether ``R`` is alpha-nonnegative is a statement about every orthonormal
basis. The minimum of the weighted diagonal sum over all bases is attained at
an eigenbasis (Ky Fan), and in the fractional case ``f(A, x)`` is the convex
combination of its neighbouring integer values, so the verdicts below are
computed from the sorted spectrum. :func:`basis_probe` checks this reduction
against random bases.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .bases import reference_basis
from .tensor_core import ricci_and_scalar, ring_matrix, traceless_dim

ZERO_RTOL = 1e-9
NEVER = "never"

POSITIVE = "positive"
NONNEGATIVE = "nonnegative"
INDEFINITE = "indefinite"
NONPOSITIVE = "nonpositive"
NEGATIVE = "negative"
ZERO = "zero"


@dataclass(frozen=True, eq=False)
class SecondKindMatrix:
    M: np.ndarray
    basis: object

    @property
    def N(self):
        return self.M.shape[0]

    @property
    def trace(self):
        return float(np.trace(self.M))


def assemble(R, basis=None):
    """``M[a, b] = Rring(phi_a, phi_b)`` over a complete orthonormal basis."""
    if basis is None:
        basis = reference_basis(R)
    if not basis.is_complete():
        raise ValueError(
            f"basis is not an orthonormal basis of S^2_0: {len(basis)} elements, "
            f"need {traceless_dim(basis.n)}"
        )
    M = ring_matrix(R, basis.tensors)
    M.setflags(write=False)
    return SecondKindMatrix(M, basis)


def eigenvalues(M):
    """Ascending eigenvalues of a :class:`SecondKindMatrix` (or plain symmetric array)."""
    A = M.M if isinstance(M, SecondKindMatrix) else np.asarray(M, dtype=float)
    return np.linalg.eigvalsh(A)


def spectrum(R, basis=None):
    return eigenvalues(assemble(R, basis))


def f_partial(A, x):
    """``f(A, x) = sum_{i<=floor x} a_i + (x - floor x) a_{floor x + 1}`` on the ascending sort."""
    a = np.sort(np.asarray(A, dtype=float))
    if not 1 <= x <= len(a):
        raise ValueError(f"x = {x} outside [1, {len(a)}]")
    return kernels.weighted_partial_sum(a, float(x))


def _tol(eigs):
    return ZERO_RTOL * (1.0 + float(np.abs(eigs).max(initial=0.0)))


@dataclass(frozen=True)
class AlphaStatus:
    status: str
    alpha: float
    f_value: float
    f_negated: float
    tol: float

    @property
    def nonnegative(self):
        return self.f_value >= -self.tol

    @property
    def positive(self):
        return self.f_value > self.tol

    @property
    def nonpositive(self):
        return self.f_negated >= -self.tol

    @property
    def negative(self):
        return self.f_negated > self.tol

    def __str__(self):
        return f"{self.status} (f={self.f_value:.12g}, f(-R)={self.f_negated:.12g})"


def status_from_spectrum(eigs, alpha):
    eigs = np.sort(np.asarray(eigs, dtype=float))
    N = len(eigs)
    if not 1 <= alpha <= N:
        raise ValueError(f"alpha = {alpha} outside [1, {N}]")
    tol = _tol(eigs)
    fp = f_partial(eigs, alpha)
    fn = f_partial(-eigs, alpha)
    if np.abs(eigs).max(initial=0.0) <= tol:
        s = ZERO
    elif fp > tol:
        s = POSITIVE
    elif fp >= -tol:
        s = NONNEGATIVE
    elif fn > tol:
        s = NEGATIVE
    elif fn >= -tol:
        s = NONPOSITIVE
    else:
        s = INDEFINITE
    return AlphaStatus(s, float(alpha), fp, fn, tol)


def alpha_status(R, alpha):
    return status_from_spectrum(spectrum(R), alpha)


def threshold_from_spectrum(eigs):
    """Smallest ``alpha`` in ``[1, N]`` with ``f(eigs, alpha) >= 0`` or ``"never"``.

    ``f`` is piecewise linear with breakpoints at the integers and slope
    ``a_{k+1}`` on ``[k, k+1]``, so the root is closed-form on its segment.
    """
    a = np.sort(np.asarray(eigs, dtype=float))
    N = len(a)
    tol = _tol(a)
    partial = np.concatenate([[0.0], np.cumsum(a)])  # partial[k] = f(a, k)
    if partial[N] < -tol:
        return NEVER
    if partial[1] >= -tol:
        return 1.0
    for k in range(1, N):
        if partial[k + 1] >= -tol:
            slope = a[k]
            if slope <= 0.0:
                return float(k + 1)
            root = k - partial[k] / slope
            return float(min(max(root, k), k + 1))
    return float(N)  # pragma: no cover - partial[N] >= -tol handled in loop


def alpha_threshold(R):
    return threshold_from_spectrum(spectrum(R))


# -- random orthonormal bases ----------------------------------------------------

def haar_orthogonal(N, rng, size=None):
    """Haar-random orthogonal matrices: QR of a Gaussian with sign-fixed diagonal."""
    shape = (N, N) if size is None else (size, N, N)
    G = rng.standard_normal(shape)
    Q, Rq = np.linalg.qr(G)
    d = np.sign(np.diagonal(Rq, axis1=-2, axis2=-1))
    d[d == 0] = 1.0
    return Q * d[..., None, :]


def basis_probe(R, alpha, trials=500, seed=0, include_eigenbasis=False, batch=100):
    """Minimum of the weighted diagonal sum over random orthonormal bases.

    Each trial conjugates the reference basis by a Haar orthogonal matrix and
    sorts the diagonal ascending (the worst ordering of that basis).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    M = assemble(R).M
    N = M.shape[0]
    if not 1 <= alpha <= N:
        raise ValueError(f"alpha = {alpha} outside [1, {N}]")
    best = np.inf
    done = 0
    chunk = 0
    while done < trials:
        size = min(batch, trials - done)
        rng = np.random.default_rng((seed, chunk))
        Qs = haar_orthogonal(N, rng, size)
        best = min(best, kernels.probe_weighted_min(M, Qs, alpha))
        done += size
        chunk += 1
    if include_eigenbasis:
        _, V = np.linalg.eigh(M)
        best = min(best, kernels.probe_weighted_min(M, V[None], alpha))
    return float(best)


# -- reports ---------------------------------------------------------------------

@dataclass
class SpectralReport:
    eigenvalues: np.ndarray
    S: float
    n: int
    m: object
    trace: float
    trace_expected: float
    threshold_nonneg: object
    verdicts: dict = field(default_factory=dict)

    @property
    def trace_residual(self):
        return abs(self.trace - self.trace_expected)


def spectral_report(R, alphas=()):
    mat = assemble(R)
    eigs = eigenvalues(mat)
    n = R.n
    S = ricci_and_scalar(R).S
    return SpectralReport(
        eigenvalues=eigs,
        S=S,
        n=n,
        m=getattr(R, "m", None),
        trace=mat.trace,
        trace_expected=(n + 2) / (2 * n) * S,
        threshold_nonneg=threshold_from_spectrum(eigs),
        verdicts={float(a): status_from_spectrum(eigs, a) for a in alphas},
    )


# -- threshold constants ---------------------------------------------------------

@dataclass(frozen=True)
class ThresholdConstants:
    m: int
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    beta_tilde: Fraction
    gamma_tilde: Fraction
    flat: Fraction
    N: int
    identities: dict

    def as_dict(self):
        return {
            "alpha_m": self.alpha,
            "beta_m": self.beta,
            "gamma_m": self.gamma,
            "beta_tilde_m": self.beta_tilde,
            "gamma_tilde_m": self.gamma_tilde,
            "flat": self.flat,
            "N": self.N,
        }


def alpha_m(m):
    m = Fraction(m)
    return (3 * m**3 - m + 2) / (2 * m)


def beta_m(m):
    m = Fraction(m)
    return (3 * m**3 + 2 * m**2 - 3 * m - 2) / (2 * m)


def gamma_m(m):
    m = Fraction(m)
    return (3 * m**2 + 2 * m - 1) / 2


def threshold_constants(m):
    """Exact threshold constants for complex dimension ``m`` and their decompositions.

    ``beta_tilde``/``gamma_tilde`` are the constants at complex dimension
    ``m + 1`` written in terms of ``m``.
    """
    if m < 2:
        raise ValueError(f"threshold constants need m >= 2, got {m}")
    q = Fraction(m)
    a, b, g = alpha_m(m), beta_m(m), gamma_m(m)
    bt = q * (q + 2) * (3 * q + 5) / (2 * (q + 1))
    gt = (3 * q**2 + 8 * q + 4) / 2
    ident = {
        "alpha_m = (m^2-1)+2+(m-1)+(m-2)(m^2-1)/(2m)": a == (q**2 - 1) + 2 + (q - 1) + (q - 2) * (q**2 - 1) / (2 * q),
        "alpha_m = (m^2-1)+2+(m-1)^2(m+2)/(2m)": a == (q**2 - 1) + 2 + (q - 1) ** 2 * (q + 2) / (2 * q),
        "beta_tilde_m = beta_(m+1)": bt == beta_m(m + 1),
        "beta_tilde_m = (m^2-1)+4m+1+m(m^2+m+2)/(2(m+1))": bt == (q**2 - 1) + 4 * q + 1 + q * (q**2 + q + 2) / (2 * (q + 1)),
        "gamma_tilde_m = gamma_(m+1)": gt == gamma_m(m + 1),
        "gamma_tilde_m = (m^2-1)+4m+3+m^2/2": gt == (q**2 - 1) + 4 * q + 3 + q**2 / 2,
    }
    return ThresholdConstants(
        m=m,
        alpha=a,
        beta=b,
        gamma=g,
        beta_tilde=bt,
        gamma_tilde=gt,
        flat=Fraction(3, 2) * (q**2 - 1),
        N=traceless_dim(2 * m),
        identities=ident,
    )
