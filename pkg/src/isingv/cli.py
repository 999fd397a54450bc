"""Command-line front end.

Subcommands: v, boundary-scan, divisor, resurgence, legfn, cs, onepoint,
mordell, fig, verify.  Exit codes: 0 ok, 1 verification failure, 2
usage/domain error.  BOUNDARY_SCOPE_THREADS sets the default thread count
for scans.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys

from .emit import RunConfig, ScanTable, default_threads, fmt15, ordered_map
from .errors import DomainError, IsingvError

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' literals (scientific notation allowed), e.g. 2-2i, 1e9."""
    cleaned = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise DomainError(f"cannot parse complex literal {text!r}") from exc


def _add_common(p):
    p.add_argument("--tol", type=float, default=1e-10, help="evaluation tolerance")
    p.add_argument("--threads", type=int, default=default_threads(),
                   help="scan parallelism (results are thread-count independent)")
    p.add_argument("--format", dest="fmt", choices=("csv", "svg"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout CSV)")


def _emit(table: ScanTable, args) -> None:
    cfg = RunConfig(tol=args.tol, fmt=args.fmt, threads=max(1, args.threads),
                    output_path=args.out)
    if cfg.output_path is None:
        sys.stdout.write(table.to_csv_text() if cfg.fmt == "csv" else table.to_svg_text())
    else:
        table.write(cfg.output_path, fmt=cfg.fmt)
        print(f"wrote {cfg.output_path}")


# ----------------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------------

def cmd_v(args) -> int:
    from .vfn import (
        v_auto,
        v_borel_laplace,
        v_integral,
        v_loggamma_sum,
        v_mellin_barnes,
        v_series_truncated,
    )

    n = parse_complex(args.n)
    routes = {
        "integral": lambda: v_integral(n, tol=args.tol),
        "mellin-barnes": lambda: v_mellin_barnes(n, tol=args.tol),
        "loggamma": lambda: v_loggamma_sum(n, tol=args.tol),
        "borel": lambda: v_borel_laplace(n, 0.0, tol=args.tol),
        "series": lambda: v_series_truncated(n),
        "auto": lambda: v_auto(n, tol=args.tol),
    }
    names = list(routes) if args.method == "all" else [args.method]
    if args.method == "all":
        names.remove("auto")
    for name in names:
        ev = routes[name]()
        print(f"{ev.route.value}: v = {fmt15(ev.value.real)} + {fmt15(ev.value.imag)}i"
              f"  (abs_err <= {ev.abs_err:.2e})")
    return EXIT_OK


def cmd_boundary_scan(args) -> int:
    from .boundary import (
        RationalAngle,
        SingularityLaw,
        classify_boundary_point,
        reflection_residual,
        singular_sum,
    )

    x = RationalAngle.parse(args.x)
    cls = classify_boundary_point(x)
    y0, y1 = args.y_min, args.y_max
    if not (0 < y0 < y1):
        raise DomainError("need 0 < y-min < y-max")
    if args.points < 2:
        raise DomainError("need at least 2 points")
    import numpy as np

    ys = np.logspace(math.log10(y0), math.log10(y1), args.points)

    def row(y):
        y = float(y)
        s = singular_sum(x.value, y, tol=args.tol)
        try:
            # close to the boundary no continuation route converges; NaN there
            res = abs(reflection_residual(x.value, y, tol=args.tol))
        except IsingvError:
            res = float("nan")
        if cls.law is SingularityLaw.LOG_Y:
            law_val = cls.predicted_coeff * math.log(y)
        else:
            law_val = cls.predicted_coeff / y**2
        return (y, s.real, s.imag, res, law_val)

    rows = ordered_map(row, ys, threads=max(1, args.threads))
    table = ScanTable(
        headers=["y", "re_S", "im_S", "reflection_residual", "predicted_law_value"],
        rows=rows,
    )
    _emit(table, args)
    return EXIT_OK


def cmd_divisor(args) -> int:
    from .divisor import fig1_table

    table = fig1_table(args.n_max)
    _emit(table, args)
    return EXIT_OK


def cmd_resurgence(args) -> int:
    from .resurgence import borel_pole_coeffs, stokes_discontinuity

    n = parse_complex(args.n)
    disc = stokes_discontinuity(n, l_max=args.l_max)
    print(f"stokes discontinuity at N = {args.n}: "
          f"{fmt15(disc.real)} + {fmt15(disc.imag)}i")
    for l in range(1, args.poles + 1):
        d = borel_pole_coeffs(l)
        print(f"pole t = 2*pi*i*{l}: double {d.double_pole_coeff:+.15g}, "
              f"single {d.single_pole_coeff:+.15g}")
    return EXIT_OK


def cmd_legfn(args) -> int:
    from .legcs import gamma_hat, leg_p, leg_p_from_gamma_hat

    z = cmath.exp(2j * math.pi * args.k / args.n)
    ev = leg_p(z, args.n)
    print(f"p(q^{{2k}}, q) [{ev.route.value}]: {fmt15(ev.value.real)} + "
          f"{fmt15(ev.value.imag)}i")
    if 0 < abs(args.k) < args.n:
        gh = gamma_hat(args.n, args.k, tol=args.tol)
        ev2 = leg_p_from_gamma_hat(args.n, args.k, tol=args.tol)
        print(f"gamma_hat: {fmt15(gh.real)} + {fmt15(gh.imag)}i")
        print(f"p via integral rep: {fmt15(ev2.value.real)} + {fmt15(ev2.value.imag)}i")
    return EXIT_OK


def cmd_cs(args) -> int:
    from .legcs import cs_identity_residual, product_P

    rows = []
    for n in range(1, args.n_max + 1):
        rows.append((float(n), product_P(n), cs_identity_residual(n)))
    table = ScanTable(headers=["N", "P", "cs_identity_residual"], rows=rows)
    _emit(table, args)
    return EXIT_OK


def cmd_onepoint(args) -> int:
    from .legcs import one_point

    ns = [int(s) for s in args.n_list.split(",") if s]
    rows = []
    for n in ns:
        op = one_point(n, tol=args.tol)
        rows.append((float(n), op.via_v, op.via_p, abs(op.via_v - op.via_p)))
    table = ScanTable(headers=["N", "via_v", "via_P", "abs_delta"], rows=rows)
    _emit(table, args)
    return EXIT_OK


def cmd_mordell(args) -> int:
    from .mordell import j_dual, j_mellin_barnes, j_quadrature

    t = parse_complex(args.t)
    printed = False
    if t.real > 0:
        ev = j_quadrature(t, tol=args.tol)
        print(f"quadrature: J = {fmt15(ev.value.real)} + {fmt15(ev.value.imag)}i")
        printed = True
    if t.imag == 0 and t.real < 0:
        for sign in ("+", "-"):
            ev = j_dual(t.real, sign, k_max=args.k_max)
            print(f"dual (t {sign} i0): J = {fmt15(ev.value.real)} + "
                  f"{fmt15(ev.value.imag)}i")
        ev = j_mellin_barnes(t, tol=args.tol, arg_t=math.pi)
        print(f"contour (Arg t = pi): J = {fmt15(ev.value.real)} + "
              f"{fmt15(ev.value.imag)}i")
        printed = True
    if not printed:
        ev = j_mellin_barnes(t, tol=args.tol)
        print(f"contour: J = {fmt15(ev.value.real)} + {fmt15(ev.value.imag)}i")
    return EXIT_OK


def cmd_fig(args) -> int:
    if args.which == 1:
        from .divisor import fig1_table

        table = fig1_table(args.n_max)
    else:
        from .mordell import fig2_scan

        tables = [
            fig2_scan(re_t=args.re_t, points=args.points, k_max=args.k_max, sign=s,
                      branch=args.branch)
            for s in ("+", "-")
        ]
        table = ScanTable(headers=tables[0].headers,
                          rows=tables[0].rows + tables[1].rows)
    _emit(table, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    results = run_suite(args.suite, tol=args.tol)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(("PASS " if r.passed else "FAIL ") + r.name + (f" -- {r.detail}" if r.detail else ""))
    print(f"{len(results) - len(failed)}/{len(results)} invariants passed")
    if failed:
        print("failing: " + ", ".join(r.name for r in failed))
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="isingv",
        description="Finite-volume Ising-chain v function, its natural boundary, "
                    "and the related divisor/Borel/q-product/Mordell identities.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("v", help="evaluate v(1/N)")
    p.add_argument("--n", required=True, help="complex N, e.g. 10 or 1+1i")
    p.add_argument("--method", default="auto",
                   choices=("auto", "integral", "mellin-barnes", "loggamma",
                            "borel", "series", "all"))
    _add_common(p)
    p.set_defaults(fn=cmd_v)

    p = sub.add_parser("boundary-scan", help="singular sum and reflection residual vs y")
    p.add_argument("--x", required=True, help="rational boundary point, e.g. 1/3")
    p.add_argument("--y-min", type=float, default=2e-2,
                   help="smallest y (the residual column needs y large enough "
                        "for the continuation routes; it reads nan below that)")
    p.add_argument("--y-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=25)
    _add_common(p)
    p.set_defaults(fn=cmd_boundary_scan)

    p = sub.add_parser("divisor", help="sigma_{-2}^o table")
    p.add_argument("--n-max", type=int, default=3000)
    _add_common(p)
    p.set_defaults(fn=cmd_divisor)

    p = sub.add_parser("resurgence", help="Stokes discontinuity and Borel pole data")
    p.add_argument("--n", required=True, help="complex N with Im N < 0, e.g. 2-2i")
    p.add_argument("--l-max", type=int, default=40)
    p.add_argument("--poles", type=int, default=3)
    _add_common(p)
    p.set_defaults(fn=cmd_resurgence)

    p = sub.add_parser("legfn", help="leg function at Z = q^{2k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_legfn)

    p = sub.add_parser("cs", help="product P and partition-function identity")
    p.add_argument("--n-max", type=int, default=50)
    _add_common(p)
    p.set_defaults(fn=cmd_cs)

    p = sub.add_parser("onepoint", help="one-point function via v and via P")
    p.add_argument("--n-list", default="1,2,3,4,6,8,12,16")
    _add_common(p)
    p.set_defaults(fn=cmd_onepoint)

    p = sub.add_parser("mordell", help="Mordell integral J(t) by available routes")
    p.add_argument("--t", required=True, help="complex t, e.g. 1 or -0.5")
    p.add_argument("--k-max", type=int, default=800)
    _add_common(p)
    p.set_defaults(fn=cmd_mordell)

    p = sub.add_parser("fig", help="data behind figure 1 or 2")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--n-max", type=int, default=3000, help="fig 1 table size")
    p.add_argument("--re-t", type=float, default=-2e-4, help="fig 2 Re t")
    p.add_argument("--points", type=int, default=500, help="fig 2 points per sign")
    p.add_argument("--k-max", type=int, default=800, help="fig 2 truncation")
    p.add_argument("--branch", choices=("upper", "lower"), default="upper")
    _add_common(p)
    p.set_defaults(fn=cmd_fig)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=("all", "v", "boundary", "divisor", "resurgence",
                            "cs", "mordell"))
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except IsingvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
