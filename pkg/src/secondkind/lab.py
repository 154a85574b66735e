"""Executable checks of the algebraic skeleton behind the threshold results.

Identity chains evaluate every diagonal entry numerically on an explicit
basis and compare the resulting combination with the closed-form right-hand
side; averages stand in for the ``f``-bounds so the chains are exact. The
implication suites manufacture hypothesis-satisfying inputs by shifting a
random Kahler tensor toward ``CP^m`` and then sample the conclusion.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bases import (
    E_MINUS,
    E_PLUS,
    BasisLabel,
    build_E_minus,
    build_E_plus,
    build_product_basis,
    closed_form_diagonals,
    diag_values,
    eta_sum_decomposition,
    iiJiJi_identity,
    kahler_basis,
)
from .kahler import KahlerOperator, functional_extremes, random_unitary_frame, ric_perp, standard_frame
from .models import const_hsc, cp_product, cp_times_flat, flat, flat_kahler, product, random_kahler, scaled_product_scan, sphere, zoo
from .spectral import (
    alpha_m,
    assemble,
    beta_m,
    f_partial,
    gamma_m,
    spectral_report,
    status_from_spectrum,
    threshold_constants,
    threshold_from_spectrum,
)
from .tensor_core import traceless_dim

CHAIN_RTOL = 1e-9
CANCEL_RTOL = 1e-10
FUNCTIONAL_RTOL = 1e-6
SHIFT_GRID = np.geomspace(1e-3, 1e3, 64)
SCAN_GRID = tuple(float(t) for t in np.geomspace(0.25, 4.0, 17))

EQ, LE, GE = "==", "<=", ">="

# seed-stream tags; seeds are integer tuples so they replay through numpy
_EXTRA = 1_000_000
_COROLLARY = 5


@dataclass(frozen=True)
class CheckRecord:
    """One comparison ``lhs <relation> rhs`` within ``tol``."""

    name: str
    lhs: float
    rhs: float
    tol: float
    relation: str = EQ

    @property
    def residual(self):
        """Violation size: ``|lhs - rhs|`` for equalities, the one-sided excess otherwise."""
        if self.relation == EQ:
            return abs(self.lhs - self.rhs)
        if self.relation == LE:
            return max(0.0, self.lhs - self.rhs)
        return max(0.0, self.rhs - self.lhs)

    @property
    def passed(self):
        return bool(np.isfinite(self.lhs) and np.isfinite(self.rhs) and self.residual <= self.tol)

    def as_dict(self):
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "relation": self.relation,
            "residual": float(self.residual),
            "tol": float(self.tol),
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    suite: str
    records: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    trials: int = 0
    params: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def failures(self):
        return [r for r in self.records if not r.passed]

    def add(self, name, lhs, rhs, tol, relation=EQ):
        rec = CheckRecord(name, float(lhs), float(rhs), float(tol), relation)
        self.records.append(rec)
        return rec

    def flag(self, name, ok):
        """Boolean check stored as ``1 == 1`` or ``0 == 1``."""
        return self.add(name, 1.0 if ok else 0.0, 1.0, 0.0)

    def extend(self, other, prefix=""):
        for r in other.records:
            self.records.append(CheckRecord(prefix + r.name, r.lhs, r.rhs, r.tol, r.relation))
        for s in other.seeds:
            if s not in self.seeds:
                self.seeds.append(s)
        self.trials = max(self.trials, other.trials)
        return self

    def worst(self):
        return max((r.residual for r in self.records), default=0.0)

    def as_dict(self):
        return {
            "suite": self.suite,
            "pass": self.passed,
            "trials": self.trials,
            "seeds": [list(s) if isinstance(s, tuple) else s for s in self.seeds],
            "params": dict(self.params),
            "records": [r.as_dict() for r in self.records],
        }

    def __str__(self):
        bad = len(self.failures())
        state = "PASS" if self.passed else f"FAIL ({bad} failing)"
        return f"{self.suite}: {len(self.records)} checks, {state}, worst residual {self.worst():.3e}"


# -- helpers ----------------------------------------------------------------------

def _require_kahler(K, min_m):
    if not isinstance(K, KahlerOperator):
        raise TypeError("identity chains need a KahlerOperator")
    if K.m < min_m:
        raise ValueError(f"this chain needs complex dimension >= {min_m}, got {K.m}")


def _frame(K, frame):
    return standard_frame(K.m) if frame is None else np.asarray(frame, dtype=float)


def _hol(K, F, i, j):
    """``R(f_i, Jf_i, f_j, Jf_j)`` for 0-based frame columns."""
    m = K.m
    return K(F[:, i], F[:, m + i], F[:, j], F[:, m + j])


def _by_kind(vals, *kinds):
    return [v for lbl, v in vals.items() if lbl.kind in kinds]


def _mean(values):
    return float(np.mean(values)) if len(values) else 0.0


# -- identity chains ----------------------------------------------------------------

def identity_chain_flat(K, frame=None, rtol=CHAIN_RTOL):
    """E+/E- bookkeeping behind the ``(3/2)(m^2-1)`` constancy threshold."""
    _require_kahler(K, 2)
    m = K.m
    F = _frame(K, frame)
    tol = rtol * K.scale
    S = K.scalar
    plus = diag_values(K, build_E_plus(F, m))
    minus = diag_values(K, build_E_minus(F, m))
    rep = VerificationReport("identity_chain_flat", params={"m": m})
    e_sum = sum(minus.values())
    A = list(plus.values())
    abar = _mean(A)
    x = (m * m - 1) / 2
    rep.add("E- diagonal sum = -(m-1)/(2m) S", e_sum, -(m - 1) / (2 * m) * S, tol)
    rep.add("mean of E+ diagonal = S/(m(m+1))", abar, S / (m * (m + 1)), tol)
    rep.add("f(A, (m^2-1)/2) <= (m-1)/(2m) S", f_partial(A, x), (m - 1) / (2 * m) * S, tol, LE)
    rep.add("E- sum + (m^2-1)/2 abar = 0", e_sum + x * abar, 0.0, CANCEL_RTOL * K.scale)
    return rep


def identity_chain_ob(K, frame=None, rtol=CHAIN_RTOL):
    """Orthogonal-bisectional chain on the first two frame vectors."""
    _require_kahler(K, 2)
    m = K.m
    F = _frame(K, frame)
    tol = rtol * K.scale
    plus = diag_values(K, build_E_plus(F, m))
    minus = diag_values(K, build_E_minus(F, m))
    rep = VerificationReport("identity_chain_ob", params={"m": m})

    e_sum = sum(minus.values())
    p12 = plus[BasisLabel("phi+", (1, 2))]
    s12 = plus[BasisLabel("psi+", (1, 2))]
    A = [plus[BasisLabel("theta", (i,))] for i in range(1, m + 1)]
    B = [v for lbl, v in plus.items() if lbl.kind in ("phi+", "psi+") and lbl.indices != (1, 2)]
    abar, bbar = _mean(A), _mean(B)
    xb = (m - 2) * (m * m - 1) / (2 * m)
    H = [_hol(K, F, i, i) for i in range(m)]
    b12 = _hol(K, F, 0, 1)
    offdiag = sum(_hol(K, F, i, j) for i in range(m) for j in range(i + 1, m))

    rep.add("abar = (1/m) sum_i H_i", abar, sum(H) / m, tol)
    if B:
        rep.add("bbar = 4/((m-2)(m+1)) (sum_{i<j} B_ij - B_12)", bbar, 4 / ((m - 2) * (m + 1)) * (offdiag - b12), tol)
    rep.add("f(A, m-1) <= (m-1) abar", f_partial(A, m - 1), (m - 1) * abar, tol, LE)
    if xb >= 1:
        rep.add("f(B, x_B) <= x_B bbar", f_partial(B, xb), xb * bbar, tol, LE)
    lhs = e_sum + p12 + s12 + (m - 1) * abar + xb * bbar
    rep.add("chain = 2(m+1)/m R(e1,Je1,e2,Je2)", lhs, 2 * (m + 1) / m * b12, tol)
    return rep


def identity_chain_h(K, frame=None, rtol=CHAIN_RTOL):
    """Holomorphic-sectional chain at the first frame vector."""
    _require_kahler(K, 2)
    m = K.m
    F = _frame(K, frame)
    tol = rtol * K.scale
    plus = diag_values(K, build_E_plus(F, m))
    minus = diag_values(K, build_E_minus(F, m))
    rep = VerificationReport("identity_chain_h", params={"m": m})

    e_sum = sum(minus.values())
    t1 = plus[BasisLabel("theta", (1,))]
    tm1 = plus[BasisLabel("theta", (m + 1,))]
    A = [v for lbl, v in plus.items() if not (lbl.kind == "theta" and lbl.indices[0] in (1, m + 1))]
    abar = _mean(A)
    x = (m - 1) ** 2 * (m + 2) / (2 * m)
    H1 = _hol(K, F, 0, 0)
    S = K.scalar

    rep.add("abar = (S - 2 H_1)/((m-1)(m+2))", abar, (S - 2 * H1) / ((m - 1) * (m + 2)), tol)
    rep.add("f(A, x) <= x abar", f_partial(A, x), x * abar, tol, LE)
    rep.add("theta_1 + theta_{m+1} = 2 H_1", t1 + tm1, 2 * H1, tol)
    rep.add("chain = (m+1)/m H_1", e_sum + t1 + tm1 + x * abar, (m + 1) / m * H1, tol)
    return rep


def _split_terms(K, frame):
    """Diagonal values and frame curvatures for ``V = V0 + V1`` (``V1`` of complex dim ``K.m - 1``)."""
    m = K.m - 1
    F = _frame(K, frame)
    basis = build_product_basis(F, m)
    vals = diag_values(K, basis)
    minus = [v for (lbl, _), p, v in zip(basis, basis.partitions, vals.values()) if p == E_MINUS]
    plus = {lbl: v for (lbl, _), p, v in zip(basis, basis.partitions, vals.values()) if p == E_PLUS}
    e0 = F[:, 0]
    sigma = sum(_hol(K, F, i, j) for i in range(1, m + 1) for j in range(1, m + 1))
    return {
        "m": m,
        "vals": vals,
        "e_sum": sum(minus),
        "plus": plus,
        "h_sum": sum(_by_kind(vals, "h")),
        "zeta": vals[BasisLabel("zeta")],
        "tau": (vals[BasisLabel("tau", (1,))], vals[BasisLabel("tau", (2,))]),
        "sigma": sigma,
        "R00": _hol(K, F, 0, 0),
        "rp": ric_perp(K, e0),
        "ric": float(e0 @ K.ricci @ e0),
    }


def _split_components(rep, d, tol):
    m, sigma, R00, rp = d["m"], d["sigma"], d["R00"], d["rp"]
    rep.add("E-(V1) sum = -(m-1)/m Sigma", d["e_sum"], -(m - 1) / m * sigma, tol)
    rep.add("sum of h diagonals = 2 Ric_perp(e0)", d["h_sum"], 2 * rp, tol)
    zeta = -m / (m + 1) * R00 + 2 / (m + 1) * rp - sigma / (m * (m + 1))
    rep.add("zeta diagonal", d["zeta"], zeta, tol)
    rep.add("tau_1 = R(e0,Je0,e0,Je0)", d["tau"][0], R00, tol)
    rep.add("tau_2 = R(e0,Je0,e0,Je0)", d["tau"][1], R00, tol)


def identity_chain_ric_perp(K, frame=None, rtol=CHAIN_RTOL):
    """Orthogonal-Ricci chain on complex dimension ``m + 1`` split at ``e_0``.

    ``frame`` columns are ``e_0..e_m, Je_0..Je_m``.
    """
    _require_kahler(K, 2)
    tol = rtol * K.scale
    d = _split_terms(K, frame)
    m = d["m"]
    rep = VerificationReport("identity_chain_ric_perp", params={"m": m})
    _split_components(rep, d, tol)
    A = list(d["tau"]) + list(d["plus"].values())
    abar = _mean(A)
    x = m * (m * m + m + 2) / (2 * (m + 1))
    rep.add("|A| = m^2+m+2", len(A), m * m + m + 2, 0.0)
    rep.add("abar = 2(Sigma + R00)/(m^2+m+2)", abar, 2 * (d["sigma"] + d["R00"]) / (m * m + m + 2), tol)
    # the average bound carries +R00 (the tau values enter A with positive sign)
    rep.add("x abar = m/(m+1)(Sigma + R00)", x * abar, m / (m + 1) * (d["sigma"] + d["R00"]), tol)
    rep.add("f(A, x) <= x abar", f_partial(A, x), x * abar, tol, LE)
    lhs = d["e_sum"] + d["h_sum"] + d["zeta"] + x * abar
    rep.add("chain = 2(m+2)/(m+1) Ric_perp(e0)", lhs, 2 * (m + 2) / (m + 1) * d["rp"], tol)
    return rep


def identity_chain_mixed(K, frame=None, rtol=CHAIN_RTOL):
    """Mixed ``C_{2,-1}`` chain on complex dimension ``m + 1`` split at ``e_0``."""
    _require_kahler(K, 2)
    tol = rtol * K.scale
    d = _split_terms(K, frame)
    m = d["m"]
    rep = VerificationReport("identity_chain_mixed", params={"m": m})
    _split_components(rep, d, tol)
    A = list(d["plus"].values())
    abar = _mean(A)
    x = m * m / 2
    rep.add("abar = 2 Sigma/(m(m+1))", abar, 2 * d["sigma"] / (m * (m + 1)), tol)
    if x >= 1:
        rep.add("f(A, m^2/2) <= m^2/2 abar", f_partial(A, x), x * abar, tol, LE)
    lhs = d["e_sum"] + d["h_sum"] + d["zeta"] + sum(d["tau"]) + x * abar
    rhs = (m + 2) / (m + 1) * (2 * d["ric"] - d["R00"])
    rep.add("chain = (m+2)/(m+1)(2Ric(e0,e0) - R(e0,Je0,e0,Je0))", lhs, rhs, tol)
    return rep


CHAINS = {
    "flat": identity_chain_flat,
    "ob": identity_chain_ob,
    "h": identity_chain_h,
    "ric_perp": identity_chain_ric_perp,
    "mixed": identity_chain_mixed,
}


def basis_identities(K, frame=None, rtol=CHAIN_RTOL):
    """Orthonormality, dimensions, diagonal sums and closed forms for ``E+ / E-``."""
    _require_kahler(K, 1)
    m = K.m
    F = _frame(K, frame)
    tol = rtol * K.scale
    rep = VerificationReport("basis_identities", params={"m": m})
    plus, minus = build_E_plus(F, m), build_E_minus(F, m)
    full = plus + minus
    rep.add("dim E+ = m(m+1)", len(plus), m * (m + 1), 0.0)
    rep.add("dim E- = m^2-1", len(minus), m * m - 1, 0.0)
    rep.add("E+ u E- orthonormal", np.abs(full.gram() - np.eye(len(full))).max(), 0.0, 1e-12)
    rep.add("E+ u E- traceless", np.abs(np.einsum("aii->a", full.tensors)).max(), 0.0, 1e-12)
    S = K.scalar
    dp, dm = diag_values(K, plus), diag_values(K, minus)
    rep.add("sum E+ diagonal = S", sum(dp.values()), S, tol)
    rep.add("sum E- diagonal = -(m-1)/(2m) S", sum(dm.values()), -(m - 1) / (2 * m) * S, tol)
    cf = closed_form_diagonals(K, F)
    ctol = CANCEL_RTOL * K.scale
    vals = {**dp, **dm}
    for lbl, v in cf.items():
        rep.add(f"closed form {lbl}", vals[lbl], v, ctol)
    if m >= 2:
        eta = eta_sum_decomposition(K, F)
        rep.add("eta sum decomposition", eta.lhs, eta.rhs, ctol)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i != j:
                c = iiJiJi_identity(K, i, j, F)
                rep.add(f"iiJiJi identity ({i},{j})", c.lhs, c.rhs, ctol)
    return rep


# -- implication suites -------------------------------------------------------------

PART_NAMES = {1: "flat", 2: "alpha", 3: "beta", 4: "gamma"}


def part_alpha(part, m):
    """Threshold constant governing ``part`` at complex dimension ``m`` (exact)."""
    if part == 1:
        return Fraction(3, 2) * (m * m - 1)
    if part == 2:
        return alpha_m(m)
    if part == 3:
        return beta_m(m)
    if part == 4:
        return gamma_m(m)
    raise ValueError(f"part must be 1, 2, 3 or 4, got {part!r}")


def hsc_variance(K, samples=2000, seed=0):
    """Variance of ``R(X,JX,X,JX)`` over random unit vectors."""
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((samples, K.n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    vals = np.einsum("abcd,sa,sb,sc,sd->s", K._hsc_tensor, X, X, X, X, optimize=True)
    return float(np.var(vals))


def smallest_shift(R, alpha, grid=SHIFT_GRID):
    """First ``t`` on ``grid`` with ``R + t CP^m(4)`` alpha-nonnegative, or ``None``.

    ``M`` is linear in ``R`` so the shifted matrices are ``M_R + t M_C``.
    """
    basis = kahler_basis(R.m)
    MR = assemble(R, basis).M
    MC = assemble(const_hsc(R.m, 4.0), basis).M
    for t in grid:
        eigs = np.linalg.eigvalsh(MR + t * MC)
        if status_from_spectrum(eigs, alpha).nonnegative:
            return float(t)
    return None


def _conclusion(rep, part, K, label, samples, seed):
    tol = FUNCTIONAL_RTOL * K.scale
    if part == 2:
        ob = functional_extremes(K, "orth_bisec", samples, seed)
        h = functional_extremes(K, "hsc", samples, seed)
        rep.add(f"{label}: min orthogonal bisectional >= 0", ob.min, 0.0, tol, GE)
        rep.add(f"{label}: min HSC >= 0", h.min, 0.0, tol, GE)
    elif part == 3:
        rp = functional_extremes(K, "ric_perp", samples, seed)
        rep.add(f"{label}: min Ric_perp >= 0", rp.min, 0.0, tol, GE)
    elif part == 4:
        mx = functional_extremes(K, "mixed", samples, seed)
        rep.add(f"{label}: min C_(2,-1) >= 0", mx.min, 0.0, tol, GE)


def _constancy(rep, K, label, samples, seed):
    S = K.scalar
    rep.add(f"{label}: HSC variance = 0", hsc_variance(K, samples, seed), 0.0, FUNCTIONAL_RTOL * (1 + abs(S)))
    rep.add(f"{label}: S >= 0", S, 0.0, 1e-9, GE)


def implication_suite(part, m, trials=20, seed=0, samples=2000):
    """Sampled check of one implication on shifted random Kahler tensors.

    Part 1 admits only constant-HSC inputs, so its shifted family is expected
    to stay below the threshold; the suite records that, runs the
    contrapositive on the unshifted tensors, and applies the conclusion to
    positive multiples of ``CP^m(4)``.
    """
    if m < 2:
        raise ValueError(f"implication suites need m >= 2, got {m}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    alpha_exact = part_alpha(part, m)
    alpha = float(alpha_exact)
    rep = VerificationReport(
        f"implication_part{part}",
        trials=trials,
        params={"part": part, "m": m, "alpha": str(alpha_exact), "samples": samples},
    )
    C = const_hsc(m, 4.0)
    for trial in range(trials):
        s = (seed, part, trial)
        rep.seeds.append(s)
        R = random_kahler(m, s)
        label = f"trial {trial}"
        t = smallest_shift(R, alpha)
        if part == 1:
            f0 = f_partial(spectral_report(R).eigenvalues, alpha)
            rep.add(f"{label}: contrapositive f(eigs, (3/2)(m^2-1)) < 0", f0, -1e-8, 0.0, LE)
            rep.flag(f"{label}: no shift of a nonconstant tensor is nonnegative", t is None)
            if t is not None:
                _constancy(rep, R + t * C, f"{label} shifted", samples, s)
            c = float(np.random.default_rng(s).uniform(0.1, 10.0))
            _constancy(rep, const_hsc(m, c), f"{label} CP^m({c:.3g})", samples, s)
            continue
        if t is None:
            rep.flag(f"{label}: shift found on grid", False)
            continue
        K = R + t * C
        rep.flag(f"{label}: shifted tensor (t={t:.4g}) is nonnegative", status_from_spectrum(spectral_report(K).eigenvalues, alpha).nonnegative)
        _conclusion(rep, part, K, label, samples, s)

    if part == 1:
        _constancy(rep, C, "CP^m(4)", samples, (seed, part, _EXTRA))
    if part == 3:
        B = cp_product(m - 1, 1)
        eigs = spectral_report(B).eigenvalues
        rep.flag("CP^{m-1} x CP^1 is beta_m-nonnegative", status_from_spectrum(eigs, alpha).nonnegative)
        rp = functional_extremes(B, "ric_perp", samples, (seed, part, _EXTRA + 1))
        rep.add("CP^{m-1} x CP^1: min Ric_perp >= -1e-6", rp.min, -1e-6, 0.0, GE)
        rep.add("CP^{m-1} x CP^1: min Ric_perp <= 1e-3", rp.min, 1e-3, 0.0, LE)
    return rep


def corollary_suite(m, trials=20, seed=0):
    """Below ``(3/2)(m^2-1)`` no Kahler operator is alpha-positive or alpha-negative."""
    if m < 2:
        raise ValueError(f"corollary suite needs m >= 2, got {m}")
    amax = 1.5 * (m * m - 1)
    grid = np.linspace(1.0, amax, 10)
    rep = VerificationReport("corollary", trials=trials, params={"m": m, "alpha_grid": [float(a) for a in grid]})
    for c in (-4.0, 0.0, 4.0):
        eigs = spectral_report(const_hsc(m, c)).eigenvalues
        neg = spectral_report(const_hsc(m, -c)).eigenvalues
        for a in grid:
            st = status_from_spectrum(eigs, a)
            rep.flag(f"c={c:g} alpha={a:.4g}: not positive/negative ({st.status})", st.status not in ("positive", "negative"))
            if c == 0.0:
                rep.flag(f"c=0 alpha={a:.4g}: zero", st.status == "zero")
            swapped = {"positive": "negative", "negative": "positive", "nonnegative": "nonpositive", "nonpositive": "nonnegative"}
            expect = swapped.get(st.status, st.status)
            rep.flag(f"c={c:g} alpha={a:.4g}: status(-R) mirrors status(R)", status_from_spectrum(neg, a).status == expect)
    for trial in range(trials):
        s = (seed, _COROLLARY, trial)
        rep.seeds.append(s)
        eigs = spectral_report(random_kahler(m, s)).eigenvalues
        for a in grid:
            st = status_from_spectrum(eigs, a)
            rep.flag(f"random {trial} alpha={a:.4g}: indefinite ({st.status})", st.status == "indefinite")
    return rep


# -- aggregate suites (CLI) ----------------------------------------------------------

def identities_suite(ms, trials=50, seed=0, rtol=CHAIN_RTOL, frames=1):
    """Identity chains, basis identities and exact constant decompositions."""
    rep = VerificationReport("identities", trials=trials, params={"m": list(ms), "rtol": rtol, "frames": frames})
    for m in ms:
        tc = threshold_constants(m)
        for name, ok in tc.identities.items():
            rep.flag(f"m={m} exact: {name}", ok)
        inputs = [(name, K) for name, K in zoo().items() if isinstance(K, KahlerOperator) and K.m == m]
        inputs.append(("flat", flat_kahler(m)))
        for trial in range(trials):
            s = (seed, m, trial)
            rep.seeds.append(s)
            inputs.append((f"random{trial}", random_kahler(m, s)))
        for idx, (name, K) in enumerate(inputs):
            for k in range(frames):
                F = standard_frame(m) if k == 0 else random_unitary_frame(m, (seed, m, idx, k))
                tag = f"m={m} {name} frame{k}"
                rep.extend(basis_identities(K, F, rtol), f"{tag} basis: ")
                for cname, chain in CHAINS.items():
                    rep.extend(chain(K, F, rtol), f"{tag} {cname}: ")
    return rep


def props_suite(ms, trials=20, seed=0, samples=2000):
    rep = VerificationReport("props", trials=trials, params={"m": list(ms), "samples": samples})
    for m in ms:
        for part in (1, 2, 3, 4):
            rep.extend(implication_suite(part, m, trials, seed, samples), f"m={m} part{part}: ")
        rep.extend(corollary_suite(m, trials, seed), f"m={m} corollary: ")
    return rep


def models_suite(ms, rtol=1e-9):
    """Golden spectra and thresholds of the model zoo."""
    rep = VerificationReport("models", params={"m": list(ms)})
    for m in ms:
        eigs = spectral_report(const_hsc(m, 4.0)).eigenvalues
        expect = np.array([-2.0] * (m * m - 1) + [4.0] * (m * (m + 1)))
        rep.add(f"CP{m}(4) spectrum", np.abs(eigs - expect).max(), 0.0, rtol)
        rep.add(f"CP{m}(4) threshold", threshold_from_spectrum(eigs), 1.5 * (m * m - 1), rtol)
        if m >= 2:
            scan = scaled_product_scan(m, SCAN_GRID)
            rep.add(f"m={m} scan min threshold = beta_m (ratio {scan.best_ratio:g})", scan.best_threshold, float(beta_m(m)), 1e-6)
    eigs = spectral_report(product(sphere(2, 1.0), flat(1))).eigenvalues
    rep.add("S2xR spectrum", np.abs(eigs - np.array([-1 / 3, 0, 0, 1, 1])).max(), 0.0, rtol)
    rep.add("S2xR threshold", threshold_from_spectrum(eigs), 10 / 3, rtol)
    eigs = spectral_report(cp_product(1, 1)).eigenvalues
    rep.add("CP1xCP1 spectrum", np.abs(eigs - np.array([-4.0] + [0.0] * 4 + [4.0] * 4)).max(), 0.0, rtol)
    rep.add("CP1xCP1 threshold", threshold_from_spectrum(eigs), 6.0, rtol)
    for name, R in zoo().items():
        sr = spectral_report(R)
        rep.add(f"{name} trace = (n+2)/(2n) S", sr.trace, sr.trace_expected, rtol * R.scale)
    eigs = spectral_report(cp_times_flat(2)).eigenvalues
    rep.add("CP2xC has >= 8 zero eigenvalues", int(np.sum(np.abs(eigs) < 1e-9)), 8, 0.0, GE)
    rep.add("N(CP2xC) = N(6)", len(eigs), traceless_dim(6), 0.0)
    return rep
