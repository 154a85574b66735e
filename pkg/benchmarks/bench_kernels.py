"""Compare the numba and pure-numpy kernel paths.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Both variants are called directly (not through the env-flag dispatch), on
inputs of the sizes the library uses: 2000-sample functional refinement on
C^3, second-kind assembly for m = 2..4, and 500-basis probes for m = 2.
"""
import argparse
import timeit

import numpy as np

from secondkind import kernels
from secondkind.bases import kahler_basis
from secondkind.models import random_kahler


def cases(rng):
    K = random_kahler(3, 0)
    X = rng.standard_normal((2006, 6))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    yield "contract_last3 n=6 S=2006", "contract_last3", (K._hsc_tensor, X, X, X)
    for m in (2, 3, 4):
        R = random_kahler(m, 0).R
        B = kahler_basis(m).tensors
        yield f"ring_matrix n={2 * m} N={len(B)}", "ring_matrix", (R, B)
    M = rng.standard_normal((9, 9))
    M = M + M.T
    Q, _ = np.linalg.qr(rng.standard_normal((500, 9, 9)))
    yield "probe_weighted_min N=9 S=500", "probe_weighted_min", (M, Q, 4.5)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    if kernels.contract_last3_numba is None:
        print("numba not installed; nothing to compare")
        return 0
    rng = np.random.default_rng(0)
    print(f"{'kernel':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s} {'max diff':>10s}")
    for label, name, inputs in cases(rng):
        inputs = tuple(np.ascontiguousarray(x) if isinstance(x, np.ndarray) else x for x in inputs)
        f_np = getattr(kernels, name + "_numpy")
        f_nb = getattr(kernels, name + "_numba")
        diff = np.max(np.abs(np.asarray(f_np(*inputs)) - np.asarray(f_nb(*inputs))))  # also warms the jit
        t_np = min(timeit.repeat(lambda: f_np(*inputs), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: f_nb(*inputs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:34s} {t_np:10.3f} {t_nb:10.3f} {t_np / t_nb:8.2f} {diff:10.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
