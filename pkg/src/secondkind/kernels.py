"""Hot numeric kernels, each with a numba and a pure-numpy implementation.

The public names (``contract_last3``, ``ring_matrix``, ``probe_weighted_min``)
dispatch to numba unless ``SECONDKIND_DISABLE_NUMBA`` is set, but only for the
kernels listed in ``NUMBA_KERNELS``: the batched contraction and the probe are
small dense products where BLAS-backed numpy wins (see
``benchmarks/bench_kernels.py``). Both variants are kept importable so tests
and the benchmark can compare them.
"""
import numpy as np

from ._accel import BACKEND, HAVE_NUMBA, USE_NUMBA, njit

__all__ = [
    "BACKEND",
    "contract_last3",
    "ring_matrix",
    "probe_weighted_min",
    "weighted_partial_sum",
]


# -- batched trilinear contraction --------------------------------------------

def contract_last3_numpy(T, A, B, C):
    """``out[s, a] = sum_{bcd} T[a,b,c,d] A[s,b] B[s,c] C[s,d]``."""
    n = T.shape[0]
    # contract the last slot through BLAS, then the two cheap ones
    w = (C @ T.reshape(-1, n).T).reshape(-1, n, n, n)
    w = np.einsum("sabc,sc->sab", w, B)
    return np.einsum("sab,sb->sa", w, A)


def _contract_last3_loops(T, A, B, C):
    S = A.shape[0]
    n = T.shape[0]
    T2 = T.reshape(n * n * n, n)
    out = np.zeros((S, n))
    w = np.empty(n * n * n)
    for s in range(S):
        for r in range(n * n * n):
            acc = 0.0
            for d in range(n):
                acc += T2[r, d] * C[s, d]
            w[r] = acc
        for a in range(n):
            acc = 0.0
            for b in range(n):
                row = 0.0
                for c in range(n):
                    row += w[(a * n + b) * n + c] * B[s, c]
                acc += row * A[s, b]
            out[s, a] = acc
    return out


# -- second-kind matrix assembly ----------------------------------------------

def ring_matrix_numpy(R, basis):
    """``M[a, b] = sum_{ijkl} R[i,j,k,l] basis[a,i,l] basis[b,j,k]``."""
    half = np.einsum("ijkl,ail->ajk", R, basis, optimize=True)
    return np.einsum("ajk,bjk->ab", half, basis, optimize=True)


def _ring_matrix_loops(R, basis):
    N = basis.shape[0]
    n = R.shape[0]
    half = np.zeros((N, n, n))
    for a in range(N):
        for i in range(n):
            for l in range(n):
                w = basis[a, i, l]
                if w == 0.0:
                    continue
                for j in range(n):
                    for k in range(n):
                        half[a, j, k] += R[i, j, k, l] * w
    M = np.zeros((N, N))
    for a in range(N):
        for b in range(N):
            acc = 0.0
            for j in range(n):
                for k in range(n):
                    acc += half[a, j, k] * basis[b, j, k]
            M[a, b] = acc
    return M


# -- weighted partial sums over random bases ----------------------------------

def weighted_partial_sum(sorted_values, alpha):
    """Sum of the first ``floor(alpha)`` entries plus the fractional next one."""
    k = int(np.floor(alpha))
    frac = alpha - k
    total = float(np.sum(sorted_values[:k]))
    if frac > 0.0:
        total += frac * float(sorted_values[k])
    return total


def probe_weighted_min_numpy(M, Qs, alpha):
    """Minimum over ``Qs`` of the weighted partial sum of sorted ``diag(Q^T M Q)``."""
    diags = np.einsum("ab,sai,sbi->si", M, Qs, Qs, optimize=True)
    diags.sort(axis=1)
    k = int(np.floor(alpha))
    frac = alpha - k
    sums = diags[:, :k].sum(axis=1)
    if frac > 0.0:
        sums = sums + frac * diags[:, k]
    return float(sums.min())


def _probe_weighted_min_loops(M, Qs, alpha):
    S = Qs.shape[0]
    N = M.shape[0]
    k = int(np.floor(alpha))
    frac = alpha - k
    best = np.inf
    diag = np.empty(N)
    MQ = np.empty(N)
    for s in range(S):
        for i in range(N):
            for a in range(N):
                acc = 0.0
                for b in range(N):
                    acc += M[a, b] * Qs[s, b, i]
                MQ[a] = acc
            acc = 0.0
            for a in range(N):
                acc += Qs[s, a, i] * MQ[a]
            diag[i] = acc
        diag.sort()
        total = 0.0
        for i in range(k):
            total += diag[i]
        if frac > 0.0:
            total += frac * diag[k]
        if total < best:
            best = total
    return best


if HAVE_NUMBA:
    contract_last3_numba = njit(_contract_last3_loops)
    ring_matrix_numba = njit(_ring_matrix_loops)
    probe_weighted_min_numba = njit(_probe_weighted_min_loops)
else:  # pragma: no cover
    contract_last3_numba = ring_matrix_numba = probe_weighted_min_numba = None


# kernels where the compiled loop beats numpy at library sizes
NUMBA_KERNELS = frozenset({"ring_matrix"})


def _use(name):
    return USE_NUMBA and name in NUMBA_KERNELS


def _as_f64(*arrays):
    return tuple(np.ascontiguousarray(x, dtype=np.float64) for x in arrays)


def contract_last3(T, A, B, C):
    T, A, B, C = _as_f64(T, np.atleast_2d(A), np.atleast_2d(B), np.atleast_2d(C))
    if _use("contract_last3"):
        return contract_last3_numba(T, A, B, C)
    return contract_last3_numpy(T, A, B, C)


def ring_matrix(R, basis):
    R, basis = _as_f64(R, basis)
    if _use("ring_matrix"):
        return ring_matrix_numba(R, basis)
    return ring_matrix_numpy(R, basis)


def probe_weighted_min(M, Qs, alpha):
    M, Qs = _as_f64(M, Qs)
    if _use("probe_weighted_min"):
        return float(probe_weighted_min_numba(M, Qs, float(alpha)))
    return probe_weighted_min_numpy(M, Qs, float(alpha))
