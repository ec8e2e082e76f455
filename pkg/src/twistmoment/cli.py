"""Command-line entry point ``twistmoment``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import eigenform, eulerprod, harness, lvalue, mainterm, verify
from .config import RunConfig, load_config
from .errors import TwistMomentError


def _config(args) -> RunConfig:
    cfg = load_config(getattr(args, "config", None))
    overrides = {k: getattr(args, k) for k in ("workers", "table_limit") if getattr(args, k, None) is not None}
    return dataclasses.replace(cfg, **overrides)


def _table(cfg: RunConfig):
    return eigenform.load_table(cfg.weight, cfg.table_limit, cfg.cache())


def _complex_json(z) -> float | list[float]:
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


# --- subcommands -------------------------------------------------------------------


def cmd_coeffs(args) -> int:
    table = eigenform.build_table(args.weight, args.limit)
    out = Path(args.out) if args.out else eigenform.cache_path(args.weight, args.limit)
    table.write(out)
    print(f"wrote {table.limit} coefficients of weight {table.weight} to {out}")
    return 0


def cmd_lvalue(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    eps = args.eps
    if args.deriv:
        results = []
        if args.method in ("series", "both"):
            v = lvalue.derivative_central(table, args.d, eps)
            results.append({"method": v.method, "value": v.value, "truncation_bound": v.truncation_bound,
                            "terms_used": v.terms_used})
        if args.method in ("contour", "both"):
            v = lvalue.derivative_contour(table, args.d, cfg.contour_c, eps)
            results.append({"method": v.method, "value": v.value, "truncation_bound": v.truncation_bound,
                            "terms_used": v.terms_used})
        payload = {"d": args.d, "quantity": "L'(1/2)", "results": results}
        if len(results) == 2:
            payload["relative_difference"] = abs(results[0]["value"] - results[1]["value"]) / abs(results[0]["value"])
    else:
        v = lvalue.completed_lambda(table, args.d, args.alpha, eps)
        payload = {"d": args.d, "quantity": "Lambda(1/2+alpha)", "alpha": args.alpha,
                   "value": _complex_json(v.value), "truncation_bound": v.truncation_bound,
                   "terms_used": v.terms_used}
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for k in sorted(payload):
            print(f"{k}: {payload[k]}")
    return 0


def _annotated(a: eulerprod.AnnotatedValue) -> dict:
    out = {"value": _complex_json(a.value), "error": a.error, "source": a.source}
    if a.cross_check is not None:
        out["cross_check"] = _complex_json(a.cross_check)
        out["cross_check_error"] = a.cross_check_error
    return out


def cmd_constants(args) -> int:
    cfg = _config(args)
    table = _table(cfg)
    P = args.primes or cfg.prime_cutoff
    T = args.smoothing or cfg.smoothing
    b = eulerprod.compute_constants(table, P, T)
    payload = {
        "weight": b.weight,
        "prime_cutoff": P,
        "smoothing": T,
        "L1_sym2": _annotated(b.L1sym2),
        "Z1_00": _annotated(b.Z1_00),
        "gamma0": b.gamma0,
        "gamma1": b.gamma1,
        "phi_tilde_1": b.phi_tilde_1,
        "provenance": b.provenance,
        "flags": b.flags(),
    }
    if args.coefficients:
        ev = mainterm.MainTermEvaluator(table, P, T)
        series = mainterm.extract_C(ev)
        cauchy = mainterm.extract_C_cauchy(ev)
        tc = mainterm.theorem_coefficients(ev, series, float(b.L1sym2.value.real), float(b.Z1_00.value.real))
        rel = [abs(a - c) / abs(a) for a, c in zip(series.C, cauchy.C)]
        payload["coefficients"] = {
            "C": dict(zip(("C3", "C2", "C1", "C0"), series.C)),
            "C_cauchy": dict(zip(("C3", "C2", "C1", "C0"), cauchy.C)),
            "route_relative_difference": dict(zip(("C3", "C2", "C1", "C0"), rel)),
            "c": {"c3": tc.c3, "c2": tc.c2, "c1": tc.c1, "c0": tc.c0},
            "c3_closed_form": tc.c3_closed_form,
            "c3_relative_gap": tc.relative_gap,
            "diagnostics": {**series.diagnostics, **cauchy.diagnostics},
        }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_moment(args) -> int:
    cfg = _config(args)
    session = harness.Session(cfg)
    if args.shifted:
        if args.x is None:
            raise SystemExit("--shifted needs --x")
        row = harness.shifted_empirical_moment(session, args.x, args.alpha, args.beta)
        anti = harness.shifted_lhs(session, args.x, args.alpha, -args.beta)[0]
        payload = {**dataclasses.asdict(row), "LHS_beta_negated": anti,
                   "antisymmetric": bool(anti == -row.LHS)}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if args.out:
            Path(args.out).write_text(text)
            if args.figures:
                from .plotting import shifted_figure

                shifted_figure([row], Path(args.figures) / (Path(args.out).stem + ".png"))
        sys.stdout.write(text)
        return 0
    X_list = args.x_values or harness.geometric_steps(args.xmin, args.xmax, args.steps)

    def progress(r):
        print(f"X={r.X:g} family={r.family_size} S_emp={r.S_emp:.6g} S_main={r.S_main:.6g} ratio={r.ratio:.4f}",
              file=sys.stderr)

    report = harness.sweep(session, X_list, progress)
    if report.notice:
        print(f"note: {report.notice}", file=sys.stderr)
    steps = report.trend
    if steps and sum(steps) < len(steps):
        print(f"warning: |ratio - 1| increased on {len(steps) - sum(steps)} of {len(steps)} steps", file=sys.stderr)
    for p in harness.write_report(report, args.out, None, args.figures):
        print(f"wrote {p}")
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    results = verify.run_suite(args.suite, cfg, emit=print)
    print(verify.summary_line(results))
    return 0 if all(r.passed for r in results) else 1


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistmoment",
                                 description="Second moment of L'(1/2) over quadratic twists of a level-one eigenform.")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--config", help="key = value run configuration file")
        p.add_argument("--table-limit", type=int, dest="table_limit", help="coefficient table size")
        return p

    p = sub.add_parser("coeffs", help="build and cache the coefficient table")
    p.add_argument("--weight", type=int, default=eigenform.DEFAULT_WEIGHT)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--out", help="output file (default: cache path)")
    p.set_defaults(func=cmd_coeffs)

    p = with_config(sub.add_parser("lvalue", help="completed value or central derivative for one twist"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--deriv", action="store_true", help="L'(1/2) instead of Lambda(1/2+alpha)")
    p.add_argument("--method", choices=("series", "contour", "both"), default="series")
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lvalue)

    p = with_config(sub.add_parser("constants", help="arithmetic constants with error annotations"))
    p.add_argument("--primes", type=int)
    p.add_argument("--smoothing", type=float)
    p.add_argument("--coefficients", action="store_true", help="append C_i and c_i with route diagnostics")
    p.add_argument("--out")
    p.set_defaults(func=cmd_constants)

    p = with_config(sub.add_parser("moment", help="empirical moments against the main term"))
    p.add_argument("--xmin", type=float, default=1000.0)
    p.add_argument("--xmax", type=float, default=40000.0)
    p.add_argument("--steps", type=int, default=6)
    p.add_argument("--x-values", type=float, nargs="+", dest="x_values", help="explicit X list (overrides steps)")
    p.add_argument("--out", default="moment.csv")
    p.add_argument("--figures", help="directory for PNG figures")
    p.add_argument("--workers", type=int)
    p.add_argument("--shifted", action="store_true")
    p.add_argument("--alpha", type=float, default=0.03)
    p.add_argument("--beta", type=float, default=0.017)
    p.add_argument("--x", type=float)
    p.set_defaults(func=cmd_moment)

    p = with_config(sub.add_parser("verify", help="run oracle suites"))
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TwistMomentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
