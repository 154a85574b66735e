"""Command-line interface: ``secondkind {model,spectrum,check,verify,curvatures}``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
import argparse
import csv
import json
import sys

from . import __version__, lab
from .io import TensorFileError, kahler_residual_of, make_report, read_tensor, tensor_to_dict, write_report, write_tensor
from .kahler import KahlerOperator, curvature_report
from .models import ModelSpec, random_curvature
from .spectral import spectral_report, status_from_spectrum
from .tensor_core import traceless_dim

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("identities", "props", "models", "all")


class UsageError(Exception):
    pass


def _num(v, tol=1e-12):
    """Shortest readable form; values within ``tol`` of zero print as 0."""
    v = float(v)
    if abs(v) <= tol:
        return "0"
    s = f"{v:.12g}"
    return s


def _m_list(text):
    try:
        ms = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --m list {text!r}; expected e.g. 2,3") from None
    if not ms or any(m < 2 for m in ms):
        raise argparse.ArgumentTypeError("--m values must be integers >= 2")
    return ms


# -- commands -----------------------------------------------------------------------

def cmd_model(args, out):
    if args.kind == "cp":
        spec = ModelSpec("const_hsc", (("m", args.m), ("c", args.c)))
    elif args.kind == "sphere":
        spec = ModelSpec("sphere", (("n", args.n), ("k", args.k)))
    elif args.kind == "flat":
        spec = ModelSpec("flat", (("n", args.n),))
    elif args.kind == "product":
        try:
            spec = ModelSpec.parse_product(args.factors)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        if (args.m is None) == (args.n is None):
            raise UsageError("model random needs exactly one of --m (Kahler) or --n (real)")
        spec = ModelSpec("random_kahler", (("m", args.m), ("seed", args.seed))) if args.m is not None else None
    try:
        R = spec.build() if spec is not None else random_curvature(args.n, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_tensor(args.output, R)
    sr = spectral_report(R)
    print(f"wrote {args.output}", file=out)
    print(f"n={R.n} N={R.N} S={_num(sr.S)} kahler={str(isinstance(R, KahlerOperator)).lower()}", file=out)
    return EXIT_OK


def _spectrum_body(R):
    sr = spectral_report(R)
    scale = R.scale
    eigs = [0.0 if abs(v) <= 1e-12 * scale else float(v) for v in sr.eigenvalues]
    return {
        "n": R.n,
        "N": R.N,
        "m": getattr(R, "m", None),
        "kahler": isinstance(R, KahlerOperator),
        "eigenvalues": eigs,
        "S": sr.S,
        "trace": sr.trace,
        "trace_expected": sr.trace_expected,
        "trace_residual": sr.trace_residual,
        "threshold": sr.threshold_nonneg,
    }


def cmd_spectrum(args, out):
    R = read_tensor(args.input)
    body = _spectrum_body(R)
    if args.format == "json":
        print(json.dumps(body, indent=1), file=out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["index", "eigenvalue"])
        for i, v in enumerate(body["eigenvalues"], 1):
            w.writerow([i, repr(v)])
    else:
        print("eigenvalues: " + " ".join(_num(v) for v in body["eigenvalues"]), file=out)
        print(f"S = {_num(body['S'])}", file=out)
        print(f"trace = {_num(body['trace'])} (expected (n+2)/(2n) S = {_num(body['trace_expected'])}, residual {body['trace_residual']:.3e})", file=out)
        th = body["threshold"]
        print(f"nonnegativity threshold: {th if th == 'never' else _num(th)}", file=out)
    if args.report:
        rep = make_report(tensor_to_dict(R), {"spectrum": body}, {"command": "spectrum"})
        write_report(args.report, rep)
    return EXIT_OK


def cmd_check(args, out):
    R = read_tensor(args.input)
    N = traceless_dim(R.n)
    if not 1 <= args.alpha <= N:
        raise UsageError(f"--alpha must lie in [1, N] = [1, {N}], got {args.alpha:g}")
    sr = spectral_report(R)
    st = status_from_spectrum(sr.eigenvalues, args.alpha)
    f = 0.0 if abs(st.f_value) <= st.tol else st.f_value
    fn = 0.0 if abs(st.f_negated) <= st.tol else st.f_negated
    print(f"{st.status} (f={_num(f)}, f(-R)={_num(fn)}) at alpha={args.alpha:g}", file=out)
    # informational: every valid status exits 0
    return EXIT_OK


def _run_suite(name, ms, args):
    if name == "identities":
        return lab.identities_suite(ms, args.trials, args.seed, args.tol, frames=args.frames)
    if name == "props":
        return lab.props_suite(ms, args.trials, args.seed, args.samples)
    return lab.models_suite(ms)


def cmd_verify(args, out):
    names = ("models", "identities", "props") if args.suite == "all" else (args.suite,)
    reports = [_run_suite(s, args.m, args) for s in names]
    ok = all(r.passed for r in reports)
    for r in reports:
        print(str(r), file=out)
        for rec in r.failures():
            print(f"  FAIL {rec.name}: lhs={rec.lhs!r} {rec.relation} rhs={rec.rhs!r} residual={rec.residual:.3e} tol={rec.tol:.3e}", file=out)
    replay = {
        "command": "verify",
        "suite": args.suite,
        "m": args.m,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "samples": args.samples,
        "frames": args.frames,
    }
    rep = make_report(replay, {"pass": ok, "suites": [r.as_dict() for r in reports]}, replay)
    write_report(args.report, rep)
    print(f"report: {args.report}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_curvatures(args, out):
    R = read_tensor(args.input)
    if not isinstance(R, KahlerOperator):
        res = kahler_residual_of(R)
        detail = "odd real dimension" if res is None else f"Kahler residual {res:.3e}"
        raise UsageError(f"input is not Kahler ({detail})")
    cr = curvature_report(R, args.samples, args.seed)
    rows = [(name, e.min, e.max) for name, e in cr.entries.items()]
    S = R.scalar
    if args.format == "json":
        body = {name: {"min": lo, "max": hi} for name, lo, hi in rows}
        body["S"] = S
        body["samples"] = args.samples
        body["seed"] = args.seed
        print(json.dumps(body, indent=1), file=out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["functional", "min", "max"])
        for name, lo, hi in rows:
            w.writerow([name, repr(lo), repr(hi)])
        w.writerow(["S", repr(S), repr(S)])
    else:
        tol = 1e-9 * R.scale
        for name, lo, hi in rows:
            print(f"{name:12s} min={_num(lo, tol):>16s} max={_num(hi, tol):>16s}", file=out)
        print(f"{'S':12s} {_num(S, tol)}", file=out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def _add_format(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(format="text")


def build_parser():
    ap = argparse.ArgumentParser(prog="secondkind", description="Curvature operator of the second kind toolkit.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("model", help="write a model curvature tensor to a JSON file")
    msub = pm.add_subparsers(dest="kind", required=True)
    for name in ("cp", "product", "sphere", "flat", "random"):
        p = msub.add_parser(name)
        p.add_argument("-o", "--output", default="model.json")
        if name == "cp":
            p.add_argument("--m", type=int, required=True)
            p.add_argument("--c", type=float, default=4.0)
        elif name == "product":
            p.add_argument("--factors", required=True, help="e.g. cp:2:4,cp:1:4 or sphere:2:1,flat:1")
        elif name == "sphere":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--k", type=float, default=1.0)
        elif name == "flat":
            p.add_argument("--n", type=int, required=True)
        else:
            p.add_argument("--m", type=int)
            p.add_argument("--n", type=int)
            p.add_argument("--seed", type=int, default=0)
    pm.set_defaults(func=cmd_model)

    ps = sub.add_parser("spectrum", help="eigenvalues, scalar curvature, trace check and threshold")
    ps.add_argument("--input", required=True)
    ps.add_argument("--report", help="also write a report file")
    _add_format(ps)
    ps.set_defaults(func=cmd_spectrum)

    pc = sub.add_parser("check", help="alpha-positivity status")
    pc.add_argument("--input", required=True)
    pc.add_argument("--alpha", type=float, required=True)
    pc.set_defaults(func=cmd_check)

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--suite", choices=SUITES, required=True)
    pv.add_argument("--m", type=_m_list, default=[2, 3])
    pv.add_argument("--trials", type=int, default=20)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--tol", type=float, default=lab.CHAIN_RTOL, help="relative tolerance of identity chains")
    pv.add_argument("--samples", type=int, default=2000)
    pv.add_argument("--frames", type=int, default=1, help="frames per operator (first is the standard one)")
    pv.add_argument("--report", default="report.json")
    pv.set_defaults(func=cmd_verify)

    pk = sub.add_parser("curvatures", help="sampled extremes of Kahler curvature functionals")
    pk.add_argument("--input", required=True)
    pk.add_argument("--samples", type=int, default=2000)
    pk.add_argument("--seed", type=int, default=0)
    _add_format(pk)
    pk.set_defaults(func=cmd_curvatures)
    return ap


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if getattr(args, "trials", 1) < 1 or getattr(args, "samples", 1) < 1:
        print("error: --trials and --samples must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, TensorFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
