"""Approximation-theory utilities.

Three families of a-priori bounds (coefficient decay, projection/interpolant
error, trapezoidal quadrature error) parameterized by either bounded
variation of a derivative or analyticity in a strip; barycentric
interpolation in unequally spaced points; and best (minimax) approximation
by the Remez exchange.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import add, sup_norm
from .construct import BuildOptions, build_adaptive, build_fixed
from .core import Interval, TrigPoly, cos_sin_to_exp, grid_values, trig_points
from .errors import (
    ConvergenceError,
    DuplicateNodeError,
    InvalidSizeError,
    RealnessError,
    ResolutionError,
)


# ---------------------------------------------------------------------------
# decay/error/quadrature bounds (used by tests as oracles)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundedVariation:
    """f is nu >= 0 times differentiable with f^(nu) of total variation V."""

    nu: int
    V: float

    def __post_init__(self):
        if self.nu < 0 or self.V <= 0:
            raise ValueError("need nu >= 0 and V > 0")


@dataclass(frozen=True)
class AnalyticStrip:
    """f is analytic and bounded by M in a strip of half-width alpha."""

    alpha: float
    M: float

    def __post_init__(self):
        if self.alpha <= 0 or self.M <= 0:
            raise ValueError("need alpha > 0 and M > 0")


def coeff_bound(k: int, params) -> float:
    """Upper bound on |c_k| for a 2*pi-periodic function of the given class."""
    if isinstance(params, BoundedVariation):
        if k == 0:
            raise InvalidSizeError("the variation bound applies to modes k != 0")
        return params.V / (2.0 * np.pi * abs(k) ** (params.nu + 1))
    if isinstance(params, AnalyticStrip):
        return params.M * np.exp(-params.alpha * abs(k))
    raise TypeError(f"unsupported parameter class {type(params).__name__}")


def approx_error_bound(n: int, which: str, params) -> float:
    """Sup-norm error bound for the degree-n projection or interpolant."""
    if n < 1:
        raise InvalidSizeError(f"need degree n >= 1, got {n}")
    if which not in ("projection", "interpolant"):
        raise ValueError(f"which must be 'projection' or 'interpolant', got {which!r}")
    double = 2.0 if which == "interpolant" else 1.0
    if isinstance(params, BoundedVariation):
        if params.nu < 1:
            raise InvalidSizeError("the variation error bound needs nu >= 1")
        return double * params.V / (np.pi * params.nu * n ** params.nu)
    if isinstance(params, AnalyticStrip):
        return double * 2.0 * params.M * np.exp(-params.alpha * n) / (np.expm1(params.alpha))
    raise TypeError(f"unsupported parameter class {type(params).__name__}")


def trap_error_bound(N: int, params) -> float:
    """Error bound for the N-point periodic trapezoidal rule over one period."""
    if N < 1:
        raise InvalidSizeError(f"need N >= 1, got {N}")
    if isinstance(params, BoundedVariation):
        if params.nu < 1:
            raise InvalidSizeError("the variation quadrature bound needs nu >= 1")
        return 4.0 * params.V / N ** (params.nu + 1)
    if isinstance(params, AnalyticStrip):
        return 4.0 * np.pi * params.M / np.expm1(params.alpha * N)
    raise TypeError(f"unsupported parameter class {type(params).__name__}")


# ---------------------------------------------------------------------------
# interpolation in unequally spaced points
# ---------------------------------------------------------------------------

class NonuniformInterpolant:
    """Barycentric trigonometric interpolant through arbitrary distinct nodes.

    Odd node counts use the csc kernel, even counts the cot modification.
    Weights are formed in log-magnitude to dodge over/underflow from
    clustered nodes.
    """

    def __init__(self, points, values, interval: Interval):
        pts = np.asarray(points, dtype=float).ravel()
        vals = np.asarray(values).ravel()
        if pts.size == 0 or pts.size != vals.size:
            raise InvalidSizeError("need matching non-empty point/value vectors")
        pts = interval.reduce(pts)
        order = np.argsort(pts)
        pts, vals = pts[order], vals[order]
        gaps = np.diff(np.concatenate([pts, [pts[0] + interval.length]]))
        if pts.size > 1 and gaps.min() <= 1e-13 * interval.length:
            raise DuplicateNodeError("nodes coincide modulo the period")
        self.nodes = pts
        self.values = vals
        self.interval = interval
        half = np.pi / interval.length
        logw = np.zeros(pts.size)
        sign = np.ones(pts.size)
        for j in range(pts.size):
            s = np.sin(half * (pts[j] - np.delete(pts, j)))
            logw[j] = -np.log(np.abs(s)).sum()
            sign[j] = np.prod(np.sign(s))
        self.weights = sign * np.exp(logw - logw.max())
        self._use_cot = pts.size % 2 == 0

    def __call__(self, t):
        from . import _kernels
        scalar = np.isscalar(t) or (isinstance(t, np.ndarray) and t.ndim == 0)
        ts = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
        out = _kernels.bary_eval(self.values, self.nodes, self.weights,
                                 self._use_cot, self.interval.a,
                                 self.interval.length, ts)
        if scalar:
            return out[0].item()
        return out.reshape(np.shape(t))


def interp_nonuniform(points, values, interval: Interval) -> NonuniformInterpolant:
    """Evaluator interpolating the values at distinct points of the interval."""
    return NonuniformInterpolant(points, values, interval)


# ---------------------------------------------------------------------------
# best approximation (Remez exchange)
# ---------------------------------------------------------------------------

@dataclass
class RemezResult:
    """Best degree-n approximant with its equioscillation certificate."""

    best: TrigPoly
    level: float
    reference: np.ndarray  # 2n+2 equioscillation points, ascending
    signs: np.ndarray      # alternating +-1 at the reference points
    iterations: int = 0
    fallback_sampling: bool = field(default=False)  # f unresolved, densely sampled


_MAX_REMEZ_ITER = 50


def _as_resolved(f, interval: Interval):
    if isinstance(f, TrigPoly):
        return f, False
    try:
        return build_adaptive(f, interval), False
    except ResolutionError:
        return build_fixed(f, interval, 2 ** 14), True


def _local_extrema(err_vals: np.ndarray, grid: np.ndarray, e: TrigPoly):
    """Refined local extrema of the error on a periodic dense grid."""
    G = err_vals.size
    prev = np.roll(err_vals, 1)
    nxt = np.roll(err_vals, -1)
    is_max = (err_vals >= prev) & (err_vals > nxt)
    is_min = (err_vals <= prev) & (err_vals < nxt)
    idx = np.nonzero(is_max | is_min)[0]
    h = grid[1] - grid[0]
    ts = []
    for i in idx:
        ym, y0, yp = err_vals[(i - 1) % G], err_vals[i], err_vals[(i + 1) % G]
        denom = ym - 2 * y0 + yp
        shift = 0.0 if denom == 0 else 0.5 * (ym - yp) / denom
        shift = np.clip(shift, -0.5, 0.5)
        ts.append(grid[i] + shift * h)
    ts = np.asarray(ts)
    return ts, np.asarray(e(ts), dtype=float)


def _alternating_subset(ts, es, m):
    """Pick m alternating-sign extrema including the largest one."""
    keep_t, keep_e = [], []
    for t, v in zip(ts, es):
        if keep_e and np.sign(v) == np.sign(keep_e[-1]):
            if abs(v) > abs(keep_e[-1]):
                keep_t[-1], keep_e[-1] = t, v
        else:
            keep_t.append(t)
            keep_e.append(v)
    # wrap-around: first and last may share a sign
    if len(keep_e) > 1 and np.sign(keep_e[0]) == np.sign(keep_e[-1]):
        if abs(keep_e[0]) >= abs(keep_e[-1]):
            keep_t.pop(), keep_e.pop()
        else:
            keep_t.pop(0), keep_e.pop(0)
    ts, es = np.asarray(keep_t), np.asarray(keep_e)
    while ts.size > m:
        absa = np.abs(es)
        if ts.size - m == 1:
            # drop the smaller endpoint to keep alternation
            j = 0 if absa[0] <= absa[-1] else ts.size - 1
            ts, es = np.delete(ts, j), np.delete(es, j)
        else:
            # drop the adjacent pair with the smallest larger-member
            pair_max = np.maximum(absa[:-1], absa[1:])
            j = int(np.argmin(pair_max))
            ts, es = np.delete(ts, [j, j + 1]), np.delete(es, [j, j + 1])
    return ts, es


def trigremez(f, n: int, interval: Interval | None = None) -> RemezResult:
    """Best sup-norm approximation by a trigonometric polynomial of degree n.

    The error curve of the result equioscillates between at least 2n+2
    extrema of magnitude `level`.  f may be a TrigPoly or a real callable
    (resolved adaptively first; if unresolvable, densely sampled with the
    fallback flagged in the result).
    """
    if interval is None:
        if not isinstance(f, TrigPoly):
            raise ValueError("an interval is required for callable input")
        interval = f.interval
    fp, fellback = _as_resolved(f, interval)
    if not fp.is_real:
        raise RealnessError("minimax approximation is defined for real functions")
    m = 2 * n + 2
    om = interval.omega
    fscale = max(sup_norm(fp), np.finfo(float).tiny)

    if fp.degree <= n:  # f is already in the space: zero error
        ref = trig_points(m, interval)
        return RemezResult(best=fp, level=0.0, reference=ref,
                           signs=(-1.0) ** np.arange(m), iterations=0,
                           fallback_sampling=fellback)

    ref = trig_points(m, interval)
    G = 1 << max(11, int(np.ceil(np.log2(16 * max(m, len(fp))))))
    grid = trig_points(G, interval)

    level = 0.0
    p = None
    for it in range(1, _MAX_REMEZ_ITER + 1):
        ks = np.arange(1, n + 1)
        A = np.empty((m, m))
        A[:, 0] = 1.0
        A[:, 1:n + 1] = np.cos(om * ref[:, None] * ks)
        A[:, n + 1:2 * n + 1] = np.sin(om * ref[:, None] * ks)
        A[:, -1] = (-1.0) ** np.arange(m)
        fx = np.asarray(fp(ref), dtype=float)
        sol = np.linalg.solve(A, fx)
        h = sol[-1]
        p = cos_sin_to_exp(sol[:n + 1], sol[n + 1:2 * n + 1], interval)
        e = add(fp, -p)
        err_vals = grid_values(e, G).real
        ts, es = _local_extrema(err_vals, grid, e)
        if ts.size < m:
            raise ConvergenceError(
                f"Remez exchange degenerated after {it} iterations", last_iterate=p)
        ts, es = _alternating_subset(ts, es, m)
        if ts.size < m:
            raise ConvergenceError(
                f"Remez exchange lost alternation after {it} iterations", last_iterate=p)
        delta = np.abs(es).max()
        level = abs(h)
        if delta - level <= 1e-10 * delta + 1e-15 * fscale:
            return RemezResult(best=p, level=level, reference=ref,
                               signs=np.sign(np.asarray(e(ref), dtype=float)),
                               iterations=it, fallback_sampling=fellback)
        ref = np.sort(ts)
    raise ConvergenceError(
        f"Remez exchange stagnated after {_MAX_REMEZ_ITER} iterations",
        last_iterate=p)
