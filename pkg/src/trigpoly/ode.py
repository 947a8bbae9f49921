"""Fourier spectral collocation for periodic ODE problems.

Linear problems are discretized on odd grids 33, 65, 129, ... until the
solution's coefficient tail has converged down to its noise floor, then
chopped like any other function.  Eigenvalue problems use the same assembly
with grid-convergence of the requested eigenvalues.  Nonlinear problems run
a damped Newton iteration in continuous mode: residuals are computed exactly
in the function algebra and each step solves a linear variable-coefficient
problem for the correction, with the operator obtained by linearizing the
residual expression node by node (product rule on products, exact rules on
sums and derivatives, forward differences for opaque pointwise functions).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import add, differentiate, multiply, sup_norm, _is_scalar
from .construct import build_adaptive, build_fixed, _envelope
from .core import Interval, TrigPoly, grid_values, interp_coeffs, trig_points
from .errors import (
    ConvergenceError,
    IntervalMismatchError,
    InvalidSizeError,
    ParityError,
    ResolutionError,
    SingularOperatorError,
)

EPS = np.finfo(float).eps

_MIN_GRID = 33
_MAX_GRID = 2 ** 13 + 1


def _grid_ladder(start: int = _MIN_GRID):
    N = _MIN_GRID
    while N < start:
        N = 2 * (N - 1) + 1
    while N <= _MAX_GRID:
        yield N
        N = 2 * (N - 1) + 1


def diff_matrix(N: int, interval: Interval, order: int = 1) -> np.ndarray:
    """N x N spectral differentiation matrix on trig_points(N, interval).

    Exact (to rounding) on every polynomial the grid can represent; built by
    transforming the identity, scaling mode k by (i*k*omega)^order, and
    transforming back.
    """
    if N < 3 or N % 2 == 0:
        raise ParityError(f"differentiation matrices use odd N >= 3, got {N}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    n = (N - 1) // 2
    ks = np.concatenate([np.arange(0, n + 1), np.arange(-n, 0)])
    mult = (1j * ks * interval.omega) ** order
    D = np.fft.ifft(mult[:, None] * np.fft.fft(np.eye(N), axis=0), axis=0)
    return np.ascontiguousarray(D.real)


def _as_coeff_fn(c, interval: Interval):
    """Normalize an operator coefficient to a scalar or TrigPoly."""
    if _is_scalar(c):
        return complex(c).real if complex(c).imag == 0 else complex(c)
    if isinstance(c, TrigPoly):
        if c.interval != interval:
            raise IntervalMismatchError("operator coefficient on a different interval")
        return c
    return build_adaptive(c, interval)


def _coeff_is_real(c) -> bool:
    return (not isinstance(c, TrigPoly) and np.imag(c) == 0) or \
        (isinstance(c, TrigPoly) and c.is_real)


def _coeff_values(c, N: int, interval: Interval) -> np.ndarray:
    if isinstance(c, TrigPoly):
        if N >= len(c.to_odd()):
            return grid_values(c, N)
        return c(trig_points(N, interval))
    return np.full(N, c)


class LinearPeriodicOp:
    """Variable-coefficient operator sum_j a_j(t) d^j/dt^j with periodic BCs.

    Coefficients may be scalars, TrigPolys, or callables (resolved here).
    """

    def __init__(self, coeffs, interval: Interval):
        coeffs = [_as_coeff_fn(c, interval) for c in coeffs]
        if not coeffs:
            raise InvalidSizeError("need at least the order-0 coefficient")
        top = coeffs[-1]
        top_zero = (isinstance(top, TrigPoly) and np.abs(top.coeffs).max() == 0.0) \
            or (not isinstance(top, TrigPoly) and top == 0)
        if top_zero:
            raise InvalidSizeError("leading coefficient is identically zero")
        self.coeffs = coeffs
        self.interval = interval
        self.order = len(coeffs) - 1
        self.is_real = all(_coeff_is_real(c) for c in coeffs)

    def matrix(self, N: int) -> np.ndarray:
        """Dense collocation matrix on the N-point grid (N odd)."""
        dtype = float if self.is_real else complex
        A = np.zeros((N, N), dtype=dtype)
        for j, c in enumerate(self.coeffs):
            vals = _coeff_values(c, N, self.interval)
            vals = vals.real if self.is_real else vals.astype(complex)
            if j == 0:
                A[np.diag_indices(N)] += vals
            else:
                A += vals[:, None] * diff_matrix(N, self.interval, j)
        return A

    def apply(self, u: TrigPoly) -> TrigPoly:
        """Apply the operator exactly in the function algebra."""
        out = multiply(u, self.coeffs[0]) if _is_scalar(self.coeffs[0]) \
            else multiply(self.coeffs[0], u)
        for j in range(1, self.order + 1):
            du = differentiate(u, j)
            term = multiply(du, self.coeffs[j]) if _is_scalar(self.coeffs[j]) \
                else multiply(self.coeffs[j], du)
            out = add(out, term)
        return out

    def scale(self) -> float:
        return max(
            (abs(c) if _is_scalar(c) else sup_norm(c)) for c in self.coeffs)


def _noise_floor_chop(coeffs: np.ndarray, vscale: float,
                      floor_tol: float = 1e-9, safety: float = 8.0):
    """Degree at which the coefficient tail has hit its noise floor, or None.

    The floor is the lowest level any plateau-length window of the envelope
    reaches; the spectrum counts as converged when the top window sits at
    that floor and the floor is far below the solution scale.
    """
    env = _envelope(coeffs, "canonical")
    if env.max() == 0.0:
        return 0
    plateau = max(3, coeffs.size // 8)
    if env.size < plateau + 1:
        return None
    windows = np.array([env[m:m + plateau].max()
                        for m in range(env.size - plateau + 1)])
    floor = windows.min()
    scale = max(vscale, env.max())
    if floor > floor_tol * scale:
        return None
    thresh = safety * floor
    if windows[-1] > thresh:
        return None
    n = env.size - 1
    while n > 0 and env[n] <= thresh:
        n -= 1
    return n


def _resolve_rhs(rhs, interval: Interval) -> TrigPoly:
    if isinstance(rhs, TrigPoly):
        if rhs.interval != interval:
            raise IntervalMismatchError("right-hand side on a different interval")
        return rhs
    if _is_scalar(rhs):
        return TrigPoly(np.array([rhs], dtype=complex), interval)
    return build_adaptive(rhs, interval)


def solve_linear(op: LinearPeriodicOp, rhs, residual_tol: float = 1e-8,
                 min_grid: int = _MIN_GRID) -> TrigPoly:
    """Solve op(u) = rhs with periodic boundary conditions.

    Refines the grid until the solution's Fourier coefficients have converged
    down to their noise floor and the exact residual passes the tolerance.
    """
    rhs_p = _resolve_rhs(rhs, op.interval)
    real_problem = op.is_real and rhs_p.is_real
    for N in _grid_ladder(min_grid):
        A = op.matrix(N)
        b = _coeff_values(rhs_p, N, op.interval)
        b = b.real if real_problem else b.astype(complex)
        try:
            u_vals = np.linalg.solve(A, b)
        except np.linalg.LinAlgError as exc:
            raise SingularOperatorError(
                f"collocation matrix of size {N} is singular") from exc
        cand = interp_coeffs(u_vals, op.interval)
        vscale = float(np.abs(u_vals).max())
        n = _noise_floor_chop(cand.coeffs, vscale)
        if n is None:
            continue
        nc = cand.degree
        u = TrigPoly(cand.coeffs[nc - n:nc + n + 1], op.interval,
                     is_real=real_problem)
        resid = sup_norm(add(op.apply(u), -rhs_p))
        scale = max(1.0, sup_norm(rhs_p), vscale) * max(1.0, op.scale())
        if resid <= residual_tol * scale:
            return u
    raise ResolutionError(
        f"periodic ODE solution not resolved using {_MAX_GRID} pts.",
        grid_size=_MAX_GRID)


@dataclass
class EigResult:
    """Grid-converged eigenpairs of a periodic differential operator."""

    eigenvalues: np.ndarray
    eigenfunctions: list
    grid_size: int


def _select_eigs(lam: np.ndarray, k: int, which: str) -> np.ndarray:
    if which == "smallest-real":
        order = np.lexsort((np.abs(lam.imag), lam.real))
    elif which == "smallest-magnitude":
        order = np.argsort(np.abs(lam))
    else:
        raise ValueError(f"which must be 'smallest-real' or 'smallest-magnitude', got {which!r}")
    return order[:k]


def eigs(op: LinearPeriodicOp, k: int = 5, which: str = "smallest-real",
         rtol: float = 1e-8) -> EigResult:
    """First k eigenpairs of op, grid-converged to rtol.

    Doubling the grid must change each returned eigenvalue by at most
    rtol*(1+|lambda|).  Eigenfunctions come back as chopped TrigPolys
    normalized to unit sup-norm.
    """
    if k < 1:
        raise InvalidSizeError(f"need k >= 1, got {k}")
    prev = None
    for N in _grid_ladder():
        if k > N - 2:
            raise InvalidSizeError(f"k={k} exceeds grid capacity N-2={N - 2}")
        A = op.matrix(N)
        symmetric = op.is_real and np.abs(A - A.T).max() <= 1e-12 * max(
            1.0, np.abs(A).max())
        if symmetric:
            lam, vecs = np.linalg.eigh(A)
        else:
            lam, vecs = np.linalg.eig(A)
        sel = _select_eigs(lam, k, which)
        lam_k, vecs_k = lam[sel], vecs[:, sel]
        if prev is not None and np.all(
                np.abs(lam_k - prev) <= rtol * (1.0 + np.abs(lam_k))):
            funs = []
            for i in range(k):
                v = vecs_k[:, i]
                v = v / np.abs(v).max()
                p = interp_coeffs(v, op.interval)
                n = _noise_floor_chop(p.coeffs, 1.0)
                if n is not None and n < p.degree:
                    nc = p.degree
                    p = TrigPoly(p.coeffs[nc - n:nc + n + 1], op.interval)
                funs.append(multiply(p, 1.0 / sup_norm(p)))
            lam_out = lam_k.real if symmetric or (
                op.is_real and np.abs(lam_k.imag).max() <= 1e-10 * (
                    1 + np.abs(lam_k).max())) else lam_k
            return EigResult(eigenvalues=lam_out, eigenfunctions=funs, grid_size=N)
        prev = lam_k
    raise ResolutionError(
        f"eigenvalues not grid-converged using {_MAX_GRID} pts.",
        grid_size=_MAX_GRID)


# ---------------------------------------------------------------------------
# residual expressions for nonlinear problems
# ---------------------------------------------------------------------------

class OpExpr:
    """Node of a residual expression built from library primitives."""

    def diff(self, order: int = 1) -> "OpExpr":
        return _Diff(self, order)

    def apply(self, func) -> "OpExpr":
        """Pointwise composition with an opaque function (linearized by
        forward finite differences)."""
        return _Apply(func, self)

    def __add__(self, other):
        return _Sum(self, _wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return _Sum(self, _Prod(_Const(-1.0), _wrap(other)))

    def __rsub__(self, other):
        return _Sum(_wrap(other), _Prod(_Const(-1.0), self))

    def __mul__(self, other):
        return _Prod(self, _wrap(other))

    __rmul__ = __mul__

    def __neg__(self):
        return _Prod(_Const(-1.0), self)


def _wrap(x) -> OpExpr:
    if isinstance(x, OpExpr):
        return x
    if _is_scalar(x) or isinstance(x, TrigPoly) or callable(x):
        return _Const(x)
    raise TypeError(f"cannot use {type(x).__name__} in a residual expression")


class _Unknown(OpExpr):
    def value(self, u, interval):
        return u

    def linearize(self, u, interval):
        return {0: 1.0}


class _Const(OpExpr):
    def __init__(self, c):
        self.c = c

    def value(self, u, interval):
        if _is_scalar(self.c) or isinstance(self.c, TrigPoly):
            return self.c
        return build_adaptive(self.c, interval)

    def linearize(self, u, interval):
        return {}


class _Sum(OpExpr):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def value(self, u, interval):
        va = self.a.value(u, interval)
        vb = self.b.value(u, interval)
        if _is_scalar(va) and _is_scalar(vb):
            return va + vb
        if _is_scalar(va):
            return add(vb, va)
        return add(va, vb)

    def linearize(self, u, interval):
        return _spec_add(self.a.linearize(u, interval),
                         self.b.linearize(u, interval))


class _Prod(OpExpr):
    def __init__(self, a, b):
        self.a, self.b = a, b

    def value(self, u, interval):
        va = self.a.value(u, interval)
        vb = self.b.value(u, interval)
        if _is_scalar(va) and _is_scalar(vb):
            return va * vb
        if _is_scalar(va):
            return multiply(vb, va)
        return multiply(va, vb)

    def linearize(self, u, interval):
        va = self.a.value(u, interval)
        vb = self.b.value(u, interval)
        la = self.a.linearize(u, interval)
        lb = self.b.linearize(u, interval)
        return _spec_add(_spec_scale(lb, va, interval),
                         _spec_scale(la, vb, interval))


class _Diff(OpExpr):
    def __init__(self, e, order):
        if order < 1:
            raise ValueError("derivative order must be >= 1")
        self.e, self.order = e, order

    def value(self, u, interval):
        v = self.e.value(u, interval)
        if _is_scalar(v):
            return 0.0
        return differentiate(v, self.order)

    def linearize(self, u, interval):
        spec = self.e.linearize(u, interval)
        for _ in range(self.order):
            spec = _spec_diff(spec, interval)
        return spec


class _Apply(OpExpr):
    _FD_STEP = 1e-7

    def __init__(self, func, e):
        self.func, self.e = func, e

    def _inner(self, u, interval):
        v = self.e.value(u, interval)
        if _is_scalar(v):
            v = TrigPoly(np.array([v], dtype=complex), interval)
        return v

    def value(self, u, interval):
        v = self._inner(u, interval)
        return build_adaptive(lambda t: self.func(v(t)), interval)

    def linearize(self, u, interval):
        v = self._inner(u, interval)
        h = self._FD_STEP * (1.0 + sup_norm(v))
        # forward difference of the pointwise map, resolved on a fixed grid:
        # the O(h) noise floor rules out adaptive construction here
        M = max(65, 2 * len(v) + 1) | 1
        slope = build_fixed(
            lambda t: (self.func(v(t) + h) - self.func(v(t))) / h, interval, M)
        return _spec_scale(self.e.linearize(u, interval), slope, interval)


def _pair_add(a, b):
    if _is_scalar(a) and _is_scalar(b):
        return a + b
    if _is_scalar(a):
        return add(b, a)
    return add(a, b)


def _spec_add(d1: dict, d2: dict) -> dict:
    out = dict(d1)
    for j, c in d2.items():
        out[j] = _pair_add(out[j], c) if j in out else c
    return out


def _spec_scale(d: dict, f, interval: Interval) -> dict:
    if _is_scalar(f):
        return {j: (c * f if _is_scalar(c) else multiply(c, f)) for j, c in d.items()}
    return {j: multiply(f, c) for j, c in d.items()}


def _spec_diff(d: dict, interval: Interval) -> dict:
    # d/dt (a_j d^j) = a_j d^{j+1} + a_j' d^j
    out = {}
    for j, c in d.items():
        out = _spec_add(out, {j + 1: c})
        if isinstance(c, TrigPoly):
            out = _spec_add(out, {j: differentiate(c)})
    return out


def unknown() -> OpExpr:
    """The unknown function u in a residual expression."""
    return _Unknown()


def compose(func, expr) -> OpExpr:
    """Pointwise composition func(expr); linearized by finite differences."""
    return _wrap(expr).apply(func)


@dataclass
class NonlinearProblem:
    """Damped-Newton problem N(u) = rhs on a periodic interval.

    residual: an OpExpr built from `unknown()` and library primitives.
    """

    residual: OpExpr
    rhs: object
    interval: Interval
    guess: TrigPoly | None = None
    residual_tol: float = 1e-8
    max_steps: int = 25
    max_halvings: int = 10
    max_bad_steps: int = 8


@dataclass
class NewtonResult:
    """Solution of a nonlinear periodic problem with iteration statistics."""

    solution: TrigPoly
    iterations: int
    residual_norm: float
    residual_history: list = field(default_factory=list)


def solve_nonlinear(prob: NonlinearProblem) -> NewtonResult:
    """Solve N(u) = rhs by damped Newton in continuous mode.

    Each step linearizes the residual expression at the current iterate,
    solves the resulting linear periodic problem for the correction, and
    backtracks (halving the step) until the true residual decreases.
    """
    iv = prob.interval
    rhs = _resolve_rhs(prob.rhs, iv)
    u = prob.guess if prob.guess is not None else TrigPoly(
        np.zeros(1, dtype=complex), iv, is_real=True)
    scale = max(1.0, sup_norm(rhs))

    def resid_poly(w):
        val = prob.residual.value(w, iv)
        if _is_scalar(val):
            val = TrigPoly(np.array([val], dtype=complex), iv)
        return add(val, -rhs)

    r_poly = resid_poly(u)
    r_norm = sup_norm(r_poly)
    history = [r_norm]
    bad_streak = 0
    for step in range(1, prob.max_steps + 1):
        spec = prob.residual.linearize(u, iv)
        m = max(spec)
        op = LinearPeriodicOp([spec.get(j, 0.0) for j in range(m + 1)], iv)
        delta = solve_linear(op, -r_poly, min_grid=max(_MIN_GRID, len(u)))
        lam = 1.0
        best = None
        for _ in range(prob.max_halvings + 1):
            cand = add(u, multiply(delta, lam))
            cand_poly = resid_poly(cand)
            cand_norm = sup_norm(cand_poly)
            if best is None or cand_norm < best[1]:
                best = (cand, cand_norm, cand_poly)
            if cand_norm < r_norm:
                break
            lam *= 0.5
        u, new_norm, r_poly = best
        if new_norm >= r_norm:
            bad_streak += 1
            if bad_streak >= prob.max_bad_steps:
                raise ConvergenceError(
                    f"Newton iteration diverged after {step} steps "
                    f"(residual {new_norm:.3g})", last_iterate=u)
        else:
            bad_streak = 0
        r_norm = new_norm
        history.append(r_norm)
        if r_norm <= prob.residual_tol * scale:
            return NewtonResult(solution=u, iterations=step,
                                residual_norm=r_norm, residual_history=history)
    raise ConvergenceError(
        f"Newton iteration did not converge in {prob.max_steps} steps "
        f"(residual {r_norm:.3g})", last_iterate=u)
