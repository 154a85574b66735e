"""JSON tensor files and report files.

Tensor files list the nonzero canonical components ``(i, j, k, l, value)``
with ``i<j``, ``k<l``, ``(i,j) <= (k,l)`` and 1-based indices. Floats are
written by :mod:`json`, which emits the shortest round-trip decimal.
"""
import hashlib
import json
import time
from pathlib import Path

import numpy as np

from .kahler import ComplexStructure, KahlerOperator, NotKahlerError, kahler_check, kahler_residual
from .tensor_core import BIANCHI_RTOL, CONVENTION, CurvatureOperator, bianchi_residual, canonical_indices

TENSOR_FORMAT = "secondkind-tensor"
REPORT_FORMAT = "secondkind-report"
VERSION = 1


class TensorFileError(ValueError):
    """Malformed or invalid tensor file; ``residual`` is set for symmetry failures."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


def tensor_to_dict(R):
    T = R.R
    entries = []
    for i, j, k, l in canonical_indices(T.shape[0]):
        v = float(T[i, j, k, l])
        if v != 0.0:
            entries.append([int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1, v])
    kahler = isinstance(R, KahlerOperator)
    return {
        "format": TENSOR_FORMAT,
        "version": VERSION,
        "n": int(T.shape[0]),
        "m": int(R.m) if kahler else None,
        "kahler": kahler,
        "convention": CONVENTION,
        "entries": entries,
    }


def dumps_tensor(R):
    return json.dumps(tensor_to_dict(R), indent=1) + "\n"


def write_tensor(path, R):
    Path(path).write_text(dumps_tensor(R))


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise TensorFileError(f"{what} must be an integer, got {x!r}")
    return x


def tensor_from_dict(d):
    """Rebuild, re-canonicalize and re-validate a tensor from its file dictionary."""
    if not isinstance(d, dict) or d.get("format") != TENSOR_FORMAT:
        raise TensorFileError(f"not a {TENSOR_FORMAT} file")
    if d.get("version") != VERSION:
        raise TensorFileError(f"unsupported version {d.get('version')!r}")
    if d.get("convention", CONVENTION) != CONVENTION:
        raise TensorFileError(f"unsupported convention {d.get('convention')!r}")
    n = _int(d.get("n"), "n")
    if n < 1:
        raise TensorFileError(f"n must be >= 1, got {n}")
    entries = d.get("entries")
    if not isinstance(entries, list):
        raise TensorFileError("entries must be a list")

    R = np.zeros((n, n, n, n))
    seen = {}
    for row in entries:
        if not isinstance(row, list) or len(row) != 5:
            raise TensorFileError(f"entry {row!r} is not [i, j, k, l, value]")
        idx = tuple(_int(x, "index") for x in row[:4])
        if any(not 1 <= x <= n for x in idx):
            raise TensorFileError(f"entry index {idx} out of range 1..{n}")
        v = row[4]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not np.isfinite(v):
            raise TensorFileError(f"entry value {v!r} is not a finite number")
        i, j, k, l = (x - 1 for x in idx)
        if (i == j or k == l) and v != 0:
            raise TensorFileError(f"entry {idx} = {v} violates antisymmetry (repeated index in a pair)")
        # orient into canonical position, tracking the sign
        sign = 1.0
        if i > j:
            i, j, sign = j, i, -sign
        if k > l:
            k, l, sign = l, k, -sign
        if (i, j) > (k, l):
            i, j, k, l = k, l, i, j
        key = (i, j, k, l)
        val = sign * float(v)
        if key in seen and seen[key] != val:
            raise TensorFileError(f"conflicting values for component {tuple(x + 1 for x in key)}")
        seen[key] = val
    for (i, j, k, l), v in seen.items():
        for a, b, s1 in ((i, j, 1.0), (j, i, -1.0)):
            for c, e, s2 in ((k, l, 1.0), (l, k, -1.0)):
                R[a, b, c, e] = s1 * s2 * v
                R[c, e, a, b] = s1 * s2 * v

    op = CurvatureOperator(R, check=False)
    res = bianchi_residual(op)
    if res > BIANCHI_RTOL * op.scale:
        raise TensorFileError(f"first Bianchi residual {res:.3e} exceeds {BIANCHI_RTOL:g} x scale", res)
    flagged = bool(d.get("kahler", False))
    if n % 2 == 0:
        m = n // 2
        if d.get("m") not in (None, m):
            raise TensorFileError(f"m = {d.get('m')} does not match n = {n}")
        try:
            return kahler_check(op, ComplexStructure(m))
        except NotKahlerError as exc:
            if flagged:
                raise TensorFileError(f"file is flagged Kahler but {exc}", exc.residual) from None
    elif flagged:
        raise TensorFileError(f"file is flagged Kahler but n = {n} is odd")
    return op


def loads_tensor(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TensorFileError(f"invalid JSON: {exc}") from None
    return tensor_from_dict(d)


def read_tensor(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TensorFileError(f"cannot read {path}: {exc.strerror}") from None
    return loads_tensor(text)


def kahler_residual_of(R):
    """Kahler residual against the standard ``J``, or ``None`` for odd ``n``."""
    if R.n % 2:
        return None
    return kahler_residual(R if isinstance(R, CurvatureOperator) else R.base, ComplexStructure(R.n // 2))


# -- reports ------------------------------------------------------------------

def digest(obj):
    """SHA-256 of the canonical JSON encoding of ``obj``."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def make_report(input_obj, body, replay):
    """Report dictionary; ``created`` is the only field outside the digest."""
    rep = {
        "format": REPORT_FORMAT,
        "version": VERSION,
        "input_digest": digest(input_obj),
        "replay": replay,
    }
    rep.update(body)
    rep["created"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return rep


def write_report(path, report):
    Path(path).write_text(json.dumps(report, indent=1, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, tuple):
        return list(x)
    return str(x)
