"""Adaptive construction of trigonometric polynomials from black-box functions.

The constructor samples on grids of size 16, 32, 64, ... (powers of two are
FFT-friendly), tests the discrete coefficients for convergence down to
relative machine precision, and chops the series to its final odd length.
Nothing is analyzed symbolically; realness is detected from the samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Interval, TrigPoly, interp_coeffs, trig_points, _symmetrize
from .errors import InvalidSizeError, ResolutionError, TrigPolyError

EPS = np.finfo(float).eps
_ZERO_FLOOR = 1e-300

MIN_GRID = 16
DEFAULT_MAX_LENGTH = 65536


@dataclass(frozen=True)
class BuildOptions:
    """Knobs for adaptive construction.

    rel_tol: coefficient tail threshold, relative to the scale of the grid.
    max_length: largest sample grid tried before giving up (power of two).
    forced_length: skip adaptivity and interpolate at exactly this many points.
    """

    rel_tol: float = 2.0 ** -52
    max_length: int = DEFAULT_MAX_LENGTH
    forced_length: int | None = None

    def __post_init__(self):
        if not 0.0 < self.rel_tol < 1.0:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        m = self.max_length
        if m < MIN_GRID or (m & (m - 1)) != 0:
            raise ValueError(f"max_length must be a power of two >= {MIN_GRID}, got {m}")


def _envelope(coeffs: np.ndarray, order: str) -> np.ndarray:
    """Magnitude per absolute mode |k| = 0..n_max, max over the +-k pair."""
    c = np.abs(np.asarray(coeffs))
    N = c.size
    n = N // 2
    if order == "wrap":
        if N % 2:
            neg = c[n + 1:][::-1]
            pos = c[1:n + 1]
            return np.concatenate([c[:1], np.maximum(pos, neg)])
        env = np.empty(n + 1)
        env[0] = c[0]
        env[1:n] = np.maximum(c[1:n], c[n + 1:][::-1])
        env[n] = c[n]
        return env
    if order == "canonical":
        if N % 2:
            return np.maximum(c[n:], c[:n + 1][::-1])
        env = np.empty(n + 1)
        env[0] = c[n]
        env[1:n] = np.maximum(c[n + 1:], c[1:n][::-1])
        env[n] = c[0]
        return env
    raise ValueError(f"order must be 'wrap' or 'canonical', got {order!r}")


def chop_tail(coeffs, rel_tol: float = 2.0 ** -52, order: str = "canonical",
              scale: float | None = None):
    """Degree after chopping, or None when the tail has not converged.

    Finds the smallest n with every coefficient beyond mode n at most
    rel_tol * scale (scale defaults to max|c_k|), and requires a plateau of
    at least max(3, len/8) consecutive below-threshold modes at the top of
    the spectrum before trusting the chop.  An all-zero input is the zero
    function and chops to degree 0.
    """
    coeffs = np.asarray(coeffs)
    if coeffs.size == 0:
        raise InvalidSizeError("empty coefficient vector")
    env = _envelope(coeffs, order)
    if scale is None:
        scale = env.max()
    if env.max() == 0.0:
        return 0
    tol = rel_tol * scale
    n_max = env.size - 1
    plateau = max(3, coeffs.size // 8)
    below = env <= tol
    if n_max + 1 < plateau or not below[-plateau:].all():
        return None
    n = n_max
    while n > 0 and below[n]:
        n -= 1
    return n


def _sample(f, ts: np.ndarray) -> np.ndarray:
    """Evaluate f at the points ts, accepting scalar-only callables."""
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(f(ts))
        except (TypeError, ValueError):
            vals = None
        if vals is None or vals.shape != ts.shape:
            vals = np.asarray([f(t) for t in ts])
    if vals.shape != ts.shape:
        raise TrigPolyError("function did not return one value per sample point")
    if not np.all(np.isfinite(vals)):
        raise TrigPolyError("function returned non-finite values on the sample grid")
    return vals


def _zero_poly(interval: Interval) -> TrigPoly:
    return TrigPoly(np.zeros(1, dtype=complex), interval, is_real=True)


def _finish(vals: np.ndarray, n: int, interval: Interval) -> TrigPoly:
    """Interpolate the samples, then cut the result down to degree n."""
    p_full = interp_coeffs(vals, interval)
    n_full = p_full.degree
    c = p_full.coeffs[n_full - n:n_full + n + 1]
    is_real = np.abs(vals.imag).max() <= 8 * EPS * np.abs(vals).max() \
        if np.iscomplexobj(vals) else True
    if is_real:
        c = _symmetrize(c)
    return TrigPoly(c, interval, is_real=is_real)


def build_adaptive(f, interval: Interval, opts: BuildOptions = BuildOptions()) -> TrigPoly:
    """Resolve a smooth periodic function to ~machine precision.

    Samples on doubling grids, chops when the coefficient tail has converged,
    and returns an odd-length polynomial.  Raises ResolutionError (carrying
    the final grid size) when max_length points do not suffice, which is the
    expected outcome for functions that are not smoothly periodic.
    """
    if opts.forced_length is not None:
        return build_fixed(f, interval, opts.forced_length)
    N = MIN_GRID
    while N <= opts.max_length:
        ts = trig_points(N, interval)
        vals = _sample(f, ts)
        vscale = np.abs(vals).max()
        if vscale < _ZERO_FLOOR:
            return _zero_poly(interval)
        raw = np.fft.fft(vals) / N
        # threshold on the larger of coefficient scale and value scale: FFT
        # rounding noise sits at eps*vscale, which for multi-mode functions
        # exceeds eps*max|c_k|
        scale = max(vscale, np.abs(raw).max())
        n = chop_tail(raw, opts.rel_tol, order="wrap", scale=scale)
        if n is not None:
            return _finish(vals, n, interval)
        N *= 2
    raise ResolutionError(
        f"Function not resolved using {opts.max_length} pts.",
        grid_size=opts.max_length)


def build_fixed(f, interval: Interval, N: int) -> TrigPoly:
    """Interpolate f at exactly N equispaced points (no adaptivity)."""
    if N < 1:
        raise InvalidSizeError(f"need N >= 1, got {N}")
    vals = _sample(f, trig_points(N, interval))
    return interp_coeffs(vals, interval)


def build_from_coeffs(coeffs, interval: Interval) -> TrigPoly:
    """Wrap an explicit coefficient vector (canonical order) as a TrigPoly."""
    arr = np.asarray(coeffs, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidSizeError("need a non-empty coefficient vector")
    return TrigPoly(arr, interval)
