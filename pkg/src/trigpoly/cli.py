"""Command-line front end.

Every number is printed with 17 significant digits so that dumps round-trip
bit-exactly.  Exit codes: 0 success, 2 resolution failure, 3 parse error,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .approx import AnalyticStrip, BoundedVariation, approx_error_bound, \
    coeff_bound, interp_nonuniform, trap_error_bound, trigremez
from .calculus import circconv, differentiate, extrema, integral, norm2, \
    roots, sup_norm
from .construct import build_adaptive, build_fixed, build_from_coeffs
from .core import Interval, TrigPoly, exp_to_cos_sin, format_coeffs, parse_coeffs
from .errors import (
    ConvergenceError,
    DuplicateNodeError,
    IntervalMismatchError,
    InvalidSizeError,
    ParityError,
    ParseError,
    PeriodicityError,
    RealnessError,
    ResolutionError,
    SingularOperatorError,
    TrigPolyError,
    ZeroFunctionError,
)
from .expr import as_callable, contains_var, eval_expr, parse_expr
from .ode import LinearPeriodicOp, eigs as ode_eigs, solve_linear

_NUMERICAL_ERRORS = (
    ConvergenceError, SingularOperatorError, ZeroFunctionError, RealnessError,
    DuplicateNodeError, IntervalMismatchError, InvalidSizeError, ParityError,
    PeriodicityError, np.linalg.LinAlgError,
)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route usage problems to exit code 3
        raise ParseError(message, 0)


def _const_value(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        pass
    e = parse_expr(text)
    if contains_var(e):
        raise ParseError(f"expected a constant, got {text!r}", 0)
    v = complex(eval_expr(e, 0.0))
    if v.imag != 0.0:
        raise ParseError(f"expected a real constant, got {text!r}", 0)
    return v.real


def _parse_interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"--interval wants 'a,b', got {text!r}", 0)
    return Interval(_const_value(parts[0]), _const_value(parts[1]))


def _build(args) -> TrigPoly:
    iv = _parse_interval(args.interval)
    f = as_callable(parse_expr(args.expr))
    if getattr(args, "trig_n", None):
        return build_fixed(f, iv, args.trig_n)
    return build_adaptive(f, iv)


def _print_value(v) -> str:
    if isinstance(v, complex) or np.iscomplexobj(v):
        v = complex(v)
        return f"{_fmt(v.real)} {_fmt(v.imag)}"
    return _fmt(float(v))


def _print_poly(p: TrigPoly) -> None:
    iv = p.interval
    print(f"interval {_fmt(iv.a)} {_fmt(iv.b)}")
    print(f"length {len(p)}")
    print(f"real {'true' if p.is_real else 'false'}")
    va, vb = p(iv.a), p(iv.b)
    print(f"endpoint-values {_print_value(va)} {_print_value(vb)}")
    print("coeffs:")
    sys.stdout.write(format_coeffs(p))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_build(args) -> int:
    if args.from_coeffs:
        with open(args.from_coeffs) as fh:
            coeffs = parse_coeffs(fh.read())
        p = build_from_coeffs(coeffs, _parse_interval(args.interval))
    elif args.expr is not None:
        p = _build(args)
    else:
        raise ParseError("build needs an expression or --from-coeffs", 0)
    _print_poly(p)
    return 0


def _cmd_eval(args) -> int:
    p = _build(args)
    for part in args.at.split(","):
        print(_print_value(p(_const_value(part))))
    return 0


def _cmd_coeffs(args) -> int:
    p = _build(args)
    if args.cos_sin:
        a, b = exp_to_cos_sin(p)
        bb = np.concatenate([[0.0], b])  # pad so row k lists a_k and b_k
        for k in range(a.size):
            print(f"{k} {_print_value(a[k])} {_print_value(bb[k])}")
    else:
        sys.stdout.write(format_coeffs(p))
    return 0


def _cmd_roots(args) -> int:
    for r in roots(_build(args)):
        print(_fmt(r))
    return 0


def _cmd_sum(args) -> int:
    print(_print_value(integral(_build(args))))
    return 0


def _cmd_norm(args) -> int:
    print(_fmt(norm2(_build(args))))
    return 0


def _cmd_max(args) -> int:
    vmax, _, _, _ = extrema(_build(args))
    print(_fmt(vmax))
    return 0


def _cmd_diff(args) -> int:
    _print_poly(differentiate(_build(args), args.order))
    return 0


def _cmd_conv(args) -> int:
    iv = _parse_interval(args.interval)
    p = build_adaptive(as_callable(parse_expr(args.expr)), iv)
    q = build_adaptive(as_callable(parse_expr(args.expr2)), iv)
    _print_poly(circconv(p, q))
    return 0


def _read_numbers(path: str) -> np.ndarray:
    with open(path) as fh:
        return np.array([float(tok) for tok in fh.read().split()])


def _cmd_interp(args) -> int:
    if not args.trig:
        raise PeriodicityError(
            "only trigonometric interpolation is supported; pass --trig")
    pts = _read_numbers(args.points)
    vals = _read_numbers(args.values)
    ev = interp_nonuniform(pts, vals, _parse_interval(args.interval))
    print(f"nodes {ev.nodes.size}")
    if args.at:
        for part in args.at.split(","):
            print(_print_value(ev(_const_value(part))))
    return 0


def _cmd_remez(args) -> int:
    iv = _parse_interval(args.interval)
    f = build_adaptive(as_callable(parse_expr(args.expr)), iv)
    res = trigremez(f, args.degree)
    print(f"level {_fmt(res.level)}")
    print(f"iterations {res.iterations}")
    print("reference:")
    for t, s in zip(res.reference, res.signs):
        print(f"{_fmt(t)} {int(s)}")
    print("coeffs:")
    sys.stdout.write(format_coeffs(res.best))
    return 0


def _parse_problem(path: str):
    order = None
    coeffs = {}
    rhs = None
    interval = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError(f"{path}:{lineno}: expected 'key=value'", 0)
            key, val = line.split("=", 1)
            key, val = key.strip(), val.strip()
            if key == "order":
                order = int(val)
            elif key.startswith("coeff[") and key.endswith("]"):
                coeffs[int(key[6:-1])] = parse_expr(val)
            elif key == "rhs":
                rhs = parse_expr(val)
            elif key == "interval":
                interval = _parse_interval(val)
            else:
                raise ParseError(f"{path}:{lineno}: unknown key {key!r}", 0)
    if order is None or interval is None:
        raise ParseError(f"{path}: problem file needs 'order' and 'interval'", 0)
    if order not in coeffs:
        raise ParseError(f"{path}: missing leading coefficient coeff[{order}]", 0)

    def as_coeff(e):
        if e is None:
            return 0.0
        if not contains_var(e):
            v = complex(eval_expr(e, 0.0))
            return v.real if v.imag == 0 else v
        return build_adaptive(as_callable(e), interval)

    op = LinearPeriodicOp([as_coeff(coeffs.get(j)) for j in range(order + 1)],
                          interval)
    rhs_p = as_coeff(rhs) if rhs is not None else None
    return op, rhs_p


def _cmd_solve(args) -> int:
    op, rhs = _parse_problem(args.problem)
    if rhs is None:
        raise ParseError(f"{args.problem}: solve needs an 'rhs' line", 0)
    u = solve_linear(op, rhs)
    from .ode import _resolve_rhs
    resid = sup_norm(op.apply(u) - _resolve_rhs(rhs, op.interval))
    print(f"length {len(u)}")
    print(f"residual {_fmt(resid)}")
    print("coeffs:")
    sys.stdout.write(format_coeffs(u))
    return 0


def _cmd_eigs(args) -> int:
    op, _ = _parse_problem(args.problem)
    res = ode_eigs(op, k=args.k)
    print(f"grid {res.grid_size}")
    for lam in res.eigenvalues:
        print(_print_value(lam))
    return 0


def _cmd_sample(args) -> int:
    p = _build(args)
    ts = np.linspace(p.interval.a, p.interval.b, args.n)
    vals = p(ts)
    with open(args.out, "w") as fh:
        if p.is_real:
            fh.write("t,value\n")
            for t, v in zip(ts, vals):
                fh.write(f"{_fmt(t)},{_fmt(v)}\n")
        else:
            fh.write("t,re,im\n")
            for t, v in zip(ts, vals):
                fh.write(f"{_fmt(t)},{_fmt(v.real)},{_fmt(v.imag)}\n")
    print(f"wrote {args.n} samples to {args.out}")
    return 0


def _cmd_bounds(args) -> int:
    if args.variant == "bv":
        if args.nu is None or args.V is None:
            raise ParseError("bv bounds need --nu and --V", 0)
        params = BoundedVariation(args.nu, args.V)
    else:
        if args.alpha is None or args.M is None:
            raise ParseError("analytic bounds need --alpha and --M", 0)
        params = AnalyticStrip(args.alpha, args.M)
    have_err = not (isinstance(params, BoundedVariation) and params.nu < 1)
    print("k coeff projection interpolant trapezoid")
    for k in range(1, args.max_index + 1):
        row = [str(k), _fmt(coeff_bound(k, params))]
        if have_err:
            row.append(_fmt(approx_error_bound(k, "projection", params)))
            row.append(_fmt(approx_error_bound(k, "interpolant", params)))
            row.append(_fmt(trap_error_bound(k, params)))
        else:
            row += ["-", "-", "-"]
        print(" ".join(row))
    return 0


# ---------------------------------------------------------------------------

def _make_parser() -> _Parser:
    ap = _Parser(prog="trigpoly",
                 description="compute with smooth periodic functions to ~15 digits")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, expr=True):
        p.add_argument("--interval", default="-1,1", help="periodic interval a,b")
        if expr:
            p.add_argument("expr", help="expression in t, e.g. 'cos(t)+sin(3*t)/2'")

    p = sub.add_parser("build", help="construct and dump a function")
    p.add_argument("expr", nargs="?", default=None)
    p.add_argument("--interval", default="-1,1")
    p.add_argument("--trig-n", type=int, default=None, help="fixed number of points")
    p.add_argument("--from-coeffs", default=None, help="read a coefficient dump")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("eval", help="evaluate at points")
    common(p)
    p.add_argument("--trig-n", type=int, default=None)
    p.add_argument("--at", required=True, help="comma-separated points")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("coeffs", help="print coefficients")
    common(p)
    p.add_argument("--trig-n", type=int, default=None)
    p.add_argument("--cos-sin", action="store_true")
    p.set_defaults(func=_cmd_coeffs)

    for name, fn in (("roots", _cmd_roots), ("sum", _cmd_sum),
                     ("norm", _cmd_norm), ("max", _cmd_max)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("diff", help="differentiate")
    common(p)
    p.add_argument("--order", type=int, default=1)
    p.set_defaults(func=_cmd_diff)

    p = sub.add_parser("conv", help="circular convolution of two functions")
    p.add_argument("expr")
    p.add_argument("expr2")
    p.add_argument("--interval", default="-1,1")
    p.set_defaults(func=_cmd_conv)

    p = sub.add_parser("interp", help="interpolate values at given points")
    p.add_argument("--points", required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--trig", action="store_true")
    p.add_argument("--at", default=None)
    p.add_argument("--interval", default="-1,1")
    p.set_defaults(func=_cmd_interp)

    p = sub.add_parser("remez", help="best sup-norm approximation")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=_cmd_remez)

    p = sub.add_parser("solve", help="solve a linear periodic ODE")
    p.add_argument("--problem", required=True)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("eigs", help="eigenvalues of a periodic operator")
    p.add_argument("--problem", required=True)
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(func=_cmd_eigs)

    p = sub.add_parser("sample", help="write t,value samples as CSV")
    common(p)
    p.add_argument("--trig-n", type=int, default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("bounds", help="decay/error/quadrature bound tables")
    p.add_argument("--variant", choices=("bv", "analytic"), required=True)
    p.add_argument("--nu", type=int, default=None)
    p.add_argument("--V", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--M", type=float, default=None)
    p.add_argument("--max-index", type=int, default=40)
    p.set_defaults(func=_cmd_bounds)

    return ap


def main(argv=None) -> int:
    ap = _make_parser()
    try:
        args = ap.parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except TrigPolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
