"""Function algebra and calculus on trigonometric polynomials.

Arithmetic behaves like a continuous analogue of floating point: exact
operations on coefficients followed by re-chopping of the rounding-level
tail, so products of high-degree functions come back at the degree the
16-digit result actually needs rather than the mathematically exact one.
"""

from __future__ import annotations

import numpy as np

from .core import Interval, TrigPoly, grid_values, interp_coeffs, trig_points
from .errors import (
    IntervalMismatchError,
    RealnessError,
    ZeroFunctionError,
)

EPS = np.finfo(float).eps
_CHOP_TOL = 2.0 ** -52


def _is_scalar(x) -> bool:
    return isinstance(x, (int, float, complex, np.number))


def _trim(coeffs: np.ndarray, interval: Interval, is_real: bool,
          rel_tol: float = _CHOP_TOL) -> TrigPoly:
    """Drop top modes below rel_tol * max|c_k| (always succeeds; keeps odd length)."""
    mags = np.abs(coeffs)
    top = mags.max()
    if top == 0.0:
        return TrigPoly(np.zeros(1, dtype=complex), interval, is_real=is_real)
    n = (coeffs.size - 1) // 2
    tol = rel_tol * top
    keep = n
    while keep > 0 and mags[n + keep] <= tol and mags[n - keep] <= tol:
        keep -= 1
    return TrigPoly(coeffs[n - keep:n + keep + 1], interval, is_real=is_real)


def _check_same_interval(p: TrigPoly, q: TrigPoly) -> None:
    if p.interval != q.interval:
        raise IntervalMismatchError(
            f"operands live on {p.interval} and {q.interval}")


def add(p: TrigPoly, q) -> TrigPoly:
    """p + q for a TrigPoly or scalar q, re-chopped."""
    if _is_scalar(q):
        a = p.to_odd()
        out = a.coeffs.copy()
        out[a.degree] += q
        is_real = p.is_real and (np.imag(q) == 0)
        return TrigPoly(out, p.interval, is_real=is_real)
    _check_same_interval(p, q)
    a, b = p.to_odd(), q.to_odd()
    n = max(a.degree, b.degree)
    out = np.zeros(2 * n + 1, dtype=complex)
    out[n - a.degree:n + a.degree + 1] += a.coeffs
    out[n - b.degree:n + b.degree + 1] += b.coeffs
    return _trim(out, p.interval, p.is_real and q.is_real)


def multiply(p: TrigPoly, q) -> TrigPoly:
    """p * q, exact (alias-free grid) then re-chopped to 16-digit degree."""
    if _is_scalar(q):
        is_real = p.is_real and (np.imag(q) == 0)
        return TrigPoly(p.coeffs * q, p.interval, is_real=is_real)
    _check_same_interval(p, q)
    a, b = p.to_odd(), q.to_odd()
    M = len(a) + len(b) - 1
    if M % 2 == 0:
        M += 1
    vals = grid_values(a, M) * grid_values(b, M)
    prod = interp_coeffs(vals, p.interval)
    return _trim(prod.coeffs, p.interval, p.is_real and q.is_real)


def differentiate(p: TrigPoly, order: int = 1) -> TrigPoly:
    """m-th derivative: c_k -> (i*k*omega)^m * c_k.

    Even-length input is first promoted to odd length N+1 (differentiating
    the top cosine needs the matching sine mode), so its length grows by one.
    """
    if order < 1:
        raise ValueError(f"derivative order must be >= 1, got {order}")
    q = p.to_odd()
    n = q.degree
    ks = np.arange(-n, n + 1)
    mult = (1j * ks * p.interval.omega) ** order
    out = q.coeffs * mult
    return _trim(out, p.interval, p.is_real, rel_tol=0.0)


def integral(p: TrigPoly):
    """Definite integral over one period: L * c_0 (the trapezoidal-rule value)."""
    c0 = p.coeff(0)
    val = p.interval.length * c0
    return val.real if p.is_real else val


def norm2(p: TrigPoly) -> float:
    """L2 norm over the period, sqrt(L * sum |c_k|^2) by Parseval."""
    q = p.to_odd()
    return float(np.sqrt(p.interval.length * np.sum(np.abs(q.coeffs) ** 2)))


def sup_norm(p: TrigPoly, oversample: int = 8) -> float:
    """Cheap accurate sup-norm estimate from a dense probe grid."""
    N = max(64, oversample * (len(p) + 1))
    return float(np.abs(grid_values(p.to_odd(), N)).max())


def roots(p: TrigPoly, merge_tol: float = 1e-10) -> np.ndarray:
    """All roots of p in [a, b), sorted ascending.

    Substitutes z = e^{i*omega*t}: roots of p correspond to unit-circle roots
    of the algebraic polynomial q(z) = sum_k c_k z^{k+n}, found as eigenvalues
    of its balanced companion matrix and polished by a few Newton steps.
    """
    q = _trim(p.to_odd().coeffs, p.interval, p.is_real)
    if len(q) == 1 and q.coeffs[0] == 0:
        raise ZeroFunctionError("the zero function vanishes everywhere")
    if q.degree == 0:
        return np.array([])  # nonzero constant
    iv = p.interval
    # ascending powers of z are exactly the canonical coefficient order
    z = np.roots(q.coeffs[::-1])
    z = z[np.abs(np.abs(z) - 1.0) <= 1e-8]
    if z.size == 0:
        return np.array([])
    t = iv.reduce(np.angle(z) / iv.omega)
    # Newton polish restores the accuracy lost in the eigensolve
    dq = differentiate(q)
    for _ in range(3):
        f = q(t)
        df = dq(t)
        ok = np.abs(df) > 0
        step = np.zeros_like(t)
        step[ok] = np.real(np.asarray(f)[ok] / np.asarray(df)[ok])
        t = iv.reduce(t - step)
    scale = np.abs(q.coeffs).sum()
    resid = np.abs(np.asarray(q(t)))
    accept_tol = max(1e-11, 20 * len(q) * EPS) * scale
    t = np.sort(t[resid <= accept_tol])
    if t.size == 0:
        return t
    # merge duplicates, including the wrap-around pair
    tol = merge_tol * iv.length
    keep = np.concatenate([[True], np.diff(t) > tol])
    t = t[keep]
    if t.size > 1 and (t[0] - iv.a) + (iv.a + iv.length - t[-1]) <= tol:
        t = t[:-1]
    return t


def extrema(p: TrigPoly):
    """Global (max, argmax, min, argmin) over the period for real p.

    Candidates are the roots of the derivative; periodicity means there are
    no endpoint candidates to add.
    """
    if not p.is_real:
        raise RealnessError("extrema are defined for real functions only")
    dp = differentiate(p)
    if len(dp) == 1 and dp.coeffs[0] == 0:
        v = float(np.real(p.coeff(0)))
        return v, p.interval.a, v, p.interval.a
    cand = roots(dp)
    if cand.size == 0:
        # derivative has no detectable sign change; fall back to a dense probe
        cand = trig_points(max(1024, 8 * len(p)) | 1, p.interval)
    vals = np.asarray(p(cand), dtype=float)
    imax, imin = int(np.argmax(vals)), int(np.argmin(vals))
    return vals[imax], float(cand[imax]), vals[imin], float(cand[imin])


def circconv(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Circular convolution over the period: coefficients L * c_f,k * c_g,k."""
    _check_same_interval(f, g)
    a, b = f.to_odd(), g.to_odd()
    n = min(a.degree, b.degree)
    ca = a.coeffs[a.degree - n:a.degree + n + 1]
    cb = b.coeffs[b.degree - n:b.degree + n + 1]
    out = f.interval.length * ca * cb
    return _trim(out, f.interval, f.is_real and g.is_real)
