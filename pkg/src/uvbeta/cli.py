"""Command line front end.

Exit codes: 0 success, 1 usage or invalid configuration, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .asymptotics import ResolutionError, coeff_c, coeff_d, k_max, stokes_lines
from .continuation import SurfacePoint, UVFunctions, connection_residual
from .gbeta import NearRationalError, g_beta_eval, g_beta_large_z, g_beta_rational, g_beta_small_z
from .kernel import BETA_MAX, BETA_MIN, DomainError, KernelParams, beta_critical, contraction_bound
from .mittag import ml_series, ml_via_gbeta
from .solver import (PreconditionError, QuadratureError, SolutionGrid, SolverError, default_tol,
                     picard_solve, solve_ray)
from .verify import SUITES, run_suite

EXIT_USAGE = 1
EXIT_NUMERIC = 2
FUNCTIONS = ("u", "v", "L", "U", "G", "E")


class UsageError(Exception):
    pass


class NumericalFailure(Exception):
    pass


@dataclass
class RunConfig:
    beta: float | None = None
    tol: float | None = None
    fn: str = "u"
    out: str | None = None
    format: str = "json"
    xmin: float = 0.0
    xmax: float = 20.0
    points: int = 101
    spacing: str = "linear"
    n_parity: str = "even"

    def validate(self):
        if self.beta is not None and not (BETA_MIN <= self.beta <= BETA_MAX):
            raise UsageError(f"beta out of range: {self.beta} not in [{BETA_MIN}, {BETA_MAX}]")
        if self.tol is not None and not (1e-14 <= self.tol <= 1e-2):
            raise UsageError(f"tol out of range: {self.tol} not in [1e-14, 1e-2]")
        if not (2 <= self.points <= 10**6):
            raise UsageError(f"points out of range: {self.points} not in [2, 1000000]")
        if self.fn not in FUNCTIONS:
            raise UsageError(f"fn must be one of {', '.join(FUNCTIONS)}")
        if self.format not in ("csv", "json"):
            raise UsageError("format must be csv or json")
        if self.spacing not in ("linear", "log"):
            raise UsageError("spacing must be linear or log")
        if self.spacing == "log" and self.xmin <= 0:
            raise UsageError("xmin must be positive for log spacing")
        if self.xmin < 0 or self.xmax <= self.xmin:
            raise UsageError("need 0 <= xmin < xmax")
        if self.n_parity not in ("even", "odd"):
            raise UsageError("n_parity must be even or odd")
        return self

    def params(self) -> KernelParams:
        if self.beta is None:
            raise UsageError("beta is required")
        return KernelParams(self.beta)

    def xs(self) -> np.ndarray:
        if self.spacing == "log":
            return np.logspace(math.log10(self.xmin), math.log10(self.xmax), self.points)
        return np.linspace(self.xmin, self.xmax, self.points)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p, *, beta=True, tol=True):
    if beta:
        p.add_argument("--beta", type=float)
    if tol:
        p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.add_argument("--config", help="JSON file; explicit flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="uvbeta", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("info", help="constants and regime of a beta"), tol=False)

    p = sub.add_parser("solve", help="solve on the positive axis and save the grid")
    _common(p)
    p.add_argument("--tag", "--fn", dest="fn", choices=("u", "v"))
    p.add_argument("--method", choices=("nystrom", "picard"), default="nystrom")

    p = sub.add_parser("eval", help="evaluate u, v, L, U, G or E at r e^{i phi}")
    _common(p)
    p.add_argument("--fn", choices=FUNCTIONS)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi", "--arg-sheet", dest="phi", type=float, default=0.0)

    p = sub.add_parser("table", help="CSV table x,re,im on the positive axis")
    _common(p)
    p.add_argument("--fn", choices=("u", "v"))
    p.add_argument("--grid", help="saved grid from `solve`")
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--spacing", choices=("linear", "log"))

    p = sub.add_parser("coeffs", help="expansion coefficients at infinity")
    _common(p)
    p.add_argument("--fn", choices=("u", "v"))
    p.add_argument("--kmax", type=int)

    p = sub.add_parser("gbeta", help="G_beta at r e^{i phi}")
    _common(p)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi", "--arg-sheet", dest="phi", type=float, default=0.0)
    p.add_argument("--method", choices=("quadrature", "small-z", "large-z", "rational"),
                   default="quadrature")

    p = sub.add_parser("ml", help="Mittag-Leffler decomposition")
    _common(p, beta=False, tol=False)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--z", type=complex, required=True)

    _common(sub.add_parser("stokes", help="Stokes lines"), tol=False)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p, tol=False)
    p.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or all")
    return ap


CONFIG_KEYS = ("beta", "tol", "fn", "xmin", "xmax", "points", "spacing", "n_parity", "format")


def load_config(args) -> RunConfig:
    """Config file values under explicit flags under RunConfig defaults."""
    merged = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(data) - set(CONFIG_KEYS) - {"out"}
        if unknown:
            raise UsageError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        merged.update(data)
    for key in CONFIG_KEYS + ("out",):
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    return RunConfig(**merged).validate()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _c(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def cmd_info(args, cfg: RunConfig):
    info = {
        "version": __version__,
        "beta_range": [BETA_MIN, BETA_MAX],
        "beta_critical": beta_critical(),
    }
    if cfg.beta is not None:
        p = cfg.params()
        info.update({
            "beta": p.beta,
            "contraction_bound": contraction_bound(p),
            "picard_available": p.beta > beta_critical(),
            "origin_class": p.origin_class.kind.value,
            "default_tol": default_tol(p.beta),
        })
    _emit(_json(info), cfg.out)


def cmd_solve(args, cfg: RunConfig):
    p = cfg.params()
    if cfg.fn not in ("u", "v"):
        raise UsageError("solve needs --tag u or v")
    solver = picard_solve if args.method == "picard" else solve_ray
    g = solver(p, cfg.fn, tol=cfg.tol)
    if cfg.out:
        _emit(g.to_json(), cfg.out)
    summary = {"beta": p.beta, "tag": g.tag, "method": g.method, "iterations": g.iterations,
               "nodes": len(g.scheme), "t_max": g.scheme.t_max, "tol": g.tol,
               "residual": g.residual, "value_at_0": g.value_at_origin().real, "out": cfg.out}
    sys.stdout.write(_json(summary))
    if not g.residual < 10 * g.tol:
        raise NumericalFailure(f"residual {g.residual:.3g} above 10 tol")


def cmd_eval(args, cfg: RunConfig):
    z = SurfacePoint(args.r, args.phi)
    out = {"fn": cfg.fn, "beta": cfg.beta, "z": {"r": z.r, "phi": z.phi}}
    if cfg.fn == "G":
        res = g_beta_eval(z, cfg.params(), cfg.tol or 1e-12)
        out.update(value=_c(res.value), err_est=res.err_est, method=res.method)
    elif cfg.fn == "E":
        out.update(alpha=1.0 / cfg.params().beta, value=_c(ml_series(1.0 / cfg.beta, z.value)))
    else:
        uv = UVFunctions(cfg.params(), cfg.tol)
        value = {"u": uv.u, "v": uv.v, "L": uv.L_beta, "U": uv.U_beta}[cfg.fn](z)
        out["value"] = _c(value)
        tags = ("u",) if cfg.fn == "u" else ("v",) if cfg.fn == "v" else ("u", "v")
        out["connection_residual"] = max(connection_residual(uv.rays(t), z.r) for t in tags)
    _emit(_json(out), cfg.out)


def _csv(xs, values) -> str:
    buf = io.StringIO()
    buf.write("x,re,im\n")
    for x, v in zip(xs, values):
        buf.write(f"{x:.17g},{v.real:.17g},{v.imag:.17g}\n")
    return buf.getvalue()


def cmd_table(args, cfg: RunConfig):
    if args.grid:
        try:
            with open(args.grid) as fh:
                g = SolutionGrid.from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load grid {args.grid}: {exc}") from exc
    else:
        g = solve_ray(cfg.params(), cfg.fn, tol=cfg.tol)
    xs = cfg.xs()
    _emit(_csv(xs, np.asarray(g.interpolate(xs), dtype=complex)), cfg.out)


def cmd_coeffs(args, cfg: RunConfig):
    g = solve_ray(cfg.params(), cfg.fn, tol=cfg.tol)
    n = args.kmax or min(k_max(g), 8)
    fn = coeff_c if cfg.fn == "u" else coeff_d
    rows = []
    for k in range(1, n + 1):
        c, e = fn(k, g, with_error=True)
        c = complex(c)
        rows.append({"k": k, "re": c.real, "im": c.imag, "err_est": e})
    _emit(_json({"beta": cfg.beta, "fn": cfg.fn, "k_max": k_max(g), "coefficients": rows}), cfg.out)


def cmd_gbeta(args, cfg: RunConfig):
    z = SurfacePoint(args.r, args.phi)
    b = cfg.params().beta
    tol = cfg.tol or 1e-12
    if args.method == "quadrature":
        d = g_beta_eval(z, b, tol).to_dict()
    else:
        if args.method == "small-z":
            value, err = g_beta_small_z(z, b), float("nan")
        elif args.method == "large-z":
            value, err = g_beta_large_z(z, b)
        else:
            value, err = g_beta_rational(z, b), float("nan")
        d = {"z": {"re": z.value.real, "im": z.value.imag, "arg_sheet": z.phi},
             "value": _c(value), "method": args.method, "err_est": err}
    _emit(_json(d), cfg.out)


def cmd_ml(args, cfg: RunConfig):
    z = args.z
    series = ml_series(args.alpha, z)
    out = {"alpha": args.alpha, "z": _c(z), "series": _c(series)}
    if args.alpha > 1:
        d = ml_via_gbeta(args.alpha, z)
        out.update({
            "case": d.case,
            "sigma": _c(d.sigma),
            "I": _c(d.i_value),
            "sigma_plus_I": _c(d.value),
            "abs_diff": abs(d.value - series),
            "rows": [{"k": k, "Z": _c(Zk), "weight": w, "retained": w > 0, "exp_Z": _c(e)}
                     for k, Zk, w, e in d.rows()],
        })
    _emit(_json(out), cfg.out)


def cmd_stokes(args, cfg: RunConfig):
    _emit(json.dumps(stokes_lines(cfg.params()).to_dict()) + "\n", cfg.out)


def cmd_verify(args, cfg: RunConfig):
    names = args.suite or ["all"]
    if "all" in names:
        names = list(SUITES)
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise UsageError(f"unknown suite {bad[0]!r}; available: {', '.join(SUITES)}")
    betas = None if cfg.beta is None else (cfg.beta,)
    results = [run_suite(n, betas if n not in ("gbeta-cross", "ml-identity") else None)
               for n in names]
    report = {"passed": all(r.passed for r in results), "suites": [r.to_dict() for r in results]}
    _emit(_json(report), cfg.out)
    for r in results:
        sys.stderr.write(f"{r.name}: {'PASS' if r.passed else 'FAIL'}\n")
    if not report["passed"]:
        raise NumericalFailure("verification failed")


COMMANDS = {
    "info": cmd_info, "solve": cmd_solve, "eval": cmd_eval, "table": cmd_table,
    "coeffs": cmd_coeffs, "gbeta": cmd_gbeta, "ml": cmd_ml, "stokes": cmd_stokes,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        COMMANDS[args.command](args, cfg)
    except (UsageError, DomainError, PreconditionError, ResolutionError, NearRationalError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (NumericalFailure, SolverError, QuadratureError, ArithmeticError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
