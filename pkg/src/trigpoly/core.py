"""Core representation of trigonometric polynomials.

A function on a periodic interval [a, b] of length L is represented by
complex coefficients c_k of the basis exp(2*pi*i*k*t/L).  The basis is
anchored in absolute coordinates: translating the interval does *not*
translate the basis, so the constant/cosine/sine shape of a coefficient
vector is meaningful independently of where the interval sits.

Storage is canonical order c_{-n}, ..., c_n with odd length N = 2n+1.  An
even length N = 2n is also permitted for interpolants through an even number
of equispaced samples; it stores the combined +-n coefficient mass once, in
the first slot, as the amplitude of the grid-anchored top cosine mode
cos(n*omega*(t-a)).  That convention is the unique one that makes the
sawtooth sample vector (-1)^j interpolate to a pure cosine (hence real data
to a real interpolant).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    IntervalMismatchError,
    InvalidSizeError,
    ParityError,
)

EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Interval:
    """Periodic interval [a, b]; the period is b - a."""

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError("interval endpoints must be finite")
        if not self.b > self.a:
            raise ValueError(f"interval needs b > a, got [{self.a}, {self.b}]")

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def omega(self) -> float:
        """Fundamental frequency 2*pi/L."""
        return 2.0 * np.pi / self.length

    def reduce(self, t):
        """Map points into [a, a+L) by periodicity (no-op for points already inside)."""
        t = np.asarray(t, dtype=float)
        L = self.length
        out = np.where((t >= self.a) & (t < self.a + L), t,
                       t - L * np.floor((t - self.a) / L))
        return out


def _is_conj_symmetric(coeffs: np.ndarray) -> bool:
    if len(coeffs) % 2:  # odd: pair c_{-k} with conj(c_k)
        return bool(np.array_equal(coeffs, np.conj(coeffs[::-1])))
    # even: first slot is the top cosine amplitude, rest pair up
    return coeffs[0].imag == 0.0 and bool(
        np.array_equal(coeffs[1:], np.conj(coeffs[1:][::-1])))


def _symmetrize(coeffs: np.ndarray) -> np.ndarray:
    out = coeffs.copy()
    if len(coeffs) % 2:
        out = 0.5 * (coeffs + np.conj(coeffs[::-1]))
    else:
        out[0] = coeffs[0].real
        out[1:] = 0.5 * (coeffs[1:] + np.conj(coeffs[1:][::-1]))
    return out


class TrigPoly:
    """Immutable trigonometric polynomial on a periodic interval.

    Attributes:
        coeffs: complex coefficients in canonical order (see module docstring).
        interval: the periodic interval.
        is_real: exact conjugate symmetry holds and evaluation returns reals.
    """

    __slots__ = ("coeffs", "interval", "is_real")

    def __init__(self, coeffs, interval: Interval, is_real: bool | None = None):
        arr = np.array(coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidSizeError("coefficient vector must be non-empty and 1-D")
        if is_real is None:
            is_real = _is_conj_symmetric(arr)
        elif is_real:
            arr = _symmetrize(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "interval", interval)
        object.__setattr__(self, "is_real", bool(is_real))

    def __setattr__(self, name, value):
        raise AttributeError("TrigPoly is immutable")

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return self.coeffs.size

    @property
    def degree(self) -> int:
        N = self.coeffs.size
        return (N - 1) // 2 if N % 2 else N // 2

    @property
    def has_even_storage(self) -> bool:
        return self.coeffs.size % 2 == 0

    def coeff(self, k: int) -> complex:
        """Coefficient of mode k (the combined cosine amplitude for k = -n, even case)."""
        n = self.degree
        if not -n <= k <= n - self.has_even_storage:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + n])

    def __repr__(self) -> str:
        kind = "real" if self.is_real else "complex"
        return (f"TrigPoly(degree={self.degree}, length={len(self)}, {kind}, "
                f"interval=[{self.interval.a:.6g}, {self.interval.b:.6g}])")

    # -- evaluation ---------------------------------------------------------

    def to_odd(self) -> "TrigPoly":
        """Equivalent odd-length representation (splits the top cosine mode)."""
        if len(self) % 2:
            return self
        n = self.degree
        gamma = self.coeffs[0]
        out = np.empty(2 * n + 1, dtype=np.complex128)
        out[1:-1] = self.coeffs[1:]
        # gamma*cos(n*omega*(t-a)) = (gamma/2) e^{-i n w a} e^{i n w t} + conj-phase twin
        ph = _mode_phases(np.array([n]), self.interval)[0]
        out[-1] = 0.5 * gamma * ph
        out[0] = 0.5 * gamma * np.conj(ph)
        return TrigPoly(out, self.interval, is_real=self.is_real)

    def eval(self, t):
        """Evaluate at scalar or array t; periodic continuation outside [a, b]."""
        scalar = np.isscalar(t) or (isinstance(t, np.ndarray) and t.ndim == 0)
        ts = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
        p = self.to_odd()
        iv = self.interval
        if self.is_real:
            out = _kernels.horner_eval_real(p.coeffs, iv.omega, iv.a, iv.length, ts)
        else:
            out = _kernels.horner_eval(p.coeffs, iv.omega, iv.a, iv.length, ts)
        if scalar:
            return out[0].item()
        return out.reshape(np.shape(t))

    __call__ = eval

    # -- operator sugar (delegates to the calculus module) -------------------

    def __add__(self, other):
        from .calculus import add
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TrigPoly(-self.coeffs, self.interval, is_real=self.is_real)

    def __sub__(self, other):
        from .calculus import add
        return add(self, -other)

    def __rsub__(self, other):
        from .calculus import add
        return add(self.__neg__(), other)

    def __mul__(self, other):
        from .calculus import multiply
        return multiply(self, other)

    __rmul__ = __mul__


def _mode_phases(ks, interval: Interval) -> np.ndarray:
    """exp(-i k omega a) for integer modes k, computed with the angle reduced
    modulo one period so that binary-fraction anchors (a/L in {0, +-1/2, ...})
    come out exact for every k."""
    frac = interval.a / interval.length
    frac -= np.round(frac)
    m = np.asarray(ks, dtype=float) * frac
    m -= np.round(m)
    return np.exp(-2j * np.pi * m)


def trig_points(N: int, interval: Interval) -> np.ndarray:
    """N equispaced sample points a + k*L/N, k = 0..N-1 (right endpoint excluded)."""
    if N < 1:
        raise InvalidSizeError(f"need at least one point, got N={N}")
    return interval.a + (interval.length / N) * np.arange(N)


def interp_coeffs(values, interval: Interval) -> TrigPoly:
    """Interpolant through samples at trig_points(N, interval), via the FFT.

    Odd N gives degree (N-1)/2.  Even N stores the combined top-mode mass as
    a single cosine amplitude so that sawtooth data (-1)^j interpolates to
    cos(n*omega*(t-a)).
    """
    vals = np.asarray(values)
    if vals.ndim != 1 or vals.size == 0:
        raise InvalidSizeError("need a non-empty 1-D sample vector")
    N = vals.size
    was_real = not np.iscomplexobj(vals) or not vals.imag.any()
    raw = np.fft.fft(vals) / N
    n = N // 2
    if N % 2:
        canonical = np.concatenate([raw[n + 1:], raw[:n + 1]])
        ks = np.arange(-n, n + 1)
        canonical *= _mode_phases(ks, interval)
    else:
        canonical = np.empty(N, dtype=np.complex128)
        canonical[0] = raw[n]  # grid-anchored top cosine amplitude
        canonical[1:n] = raw[n + 1:]
        canonical[n:] = raw[:n]
        ks = np.arange(-(n - 1), n)
        canonical[1:] *= _mode_phases(ks, interval)
    if was_real:
        canonical = _symmetrize(canonical)
    return TrigPoly(canonical, interval, is_real=was_real)


def grid_values(p: TrigPoly, N: int) -> np.ndarray:
    """Values of p at trig_points(N, p.interval) by zero-padded inverse FFT.

    Requires N >= len(p); this is the fast O(N log N) resampling used by
    multiplication and the ODE solvers.
    """
    q = p.to_odd()
    if N < len(q):
        raise InvalidSizeError(f"cannot resample length {len(q)} onto coarser grid {N}")
    n = q.degree
    ks = np.arange(-n, n + 1)
    c_grid = q.coeffs * np.conj(_mode_phases(ks, q.interval))
    wrap = np.zeros(N, dtype=np.complex128)
    wrap[ks % N] = c_grid
    vals = np.fft.ifft(wrap) * N
    if p.is_real:
        return vals.real
    return vals


def eval_barycentric(values, interval: Interval, t):
    """Evaluate the equispaced trigonometric interpolant directly from samples.

    O(N) per point; csc weights for odd N, Henrici's cot modification for
    even N.  At a grid point the sample itself is returned.
    """
    vals = np.asarray(values)
    if vals.ndim != 1 or vals.size == 0:
        raise InvalidSizeError("need a non-empty 1-D sample vector")
    N = vals.size
    nodes = trig_points(N, interval)
    weights = (-1.0) ** np.arange(N)
    use_cot = (N % 2 == 0)
    scalar = np.isscalar(t) or (isinstance(t, np.ndarray) and t.ndim == 0)
    ts = np.atleast_1d(np.asarray(t, dtype=float)).ravel()
    out = _kernels.bary_eval(vals, nodes, weights, use_cot,
                             interval.a, interval.length, ts)
    if scalar:
        return out[0].item()
    return out.reshape(np.shape(t))


def alias_index(k: int, N: int) -> int:
    """Index in [-n, n] congruent to k modulo N = 2n+1 (odd grids only)."""
    if N < 1 or N % 2 == 0:
        raise ParityError(f"aliasing index is defined for odd N only, got {N}")
    n = (N - 1) // 2
    return int((k + n) % N) - n


def exp_to_cos_sin(p: TrigPoly):
    """Cosine/sine view: a_k = c_k + c_{-k} (a_0 = c_0), b_k = i(c_k - c_{-k}).

    Returns (a, b) with a indexed 0..n and b indexed 1..n.  For even storage
    on an interval anchored at a, the top cosine amplitude splits into
    a_n = gamma*cos(n*omega*a_left) and b_n = gamma*sin(n*omega*a_left).
    """
    q = p.to_odd()
    n = q.degree
    c = q.coeffs
    a = np.empty(n + 1, dtype=np.complex128)
    b = np.empty(n, dtype=np.complex128)
    a[0] = c[n]
    for k in range(1, n + 1):
        a[k] = c[n + k] + c[n - k]
        b[k - 1] = 1j * (c[n + k] - c[n - k])
    if p.is_real:
        return a.real, b.real
    return a, b


def cos_sin_to_exp(a, b, interval: Interval) -> TrigPoly:
    """Inverse of :func:`exp_to_cos_sin`: build the exp-basis polynomial.

    b may be given with or without a leading padding slot for the unused b_0.
    """
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b)) if np.size(b) else np.zeros(0)
    n = a.size - 1
    if b.size == n + 1:
        b = b[1:]
    elif b.size != n:
        raise InvalidSizeError(
            f"need len(b) in {{len(a)-1, len(a)}}, got len(a)={a.size}, len(b)={b.size}")
    was_real = not (np.iscomplexobj(a) or np.iscomplexobj(b))
    c = np.zeros(2 * n + 1, dtype=np.complex128)
    c[n] = a[0]
    for k in range(1, n + 1):
        c[n + k] = 0.5 * a[k] - 0.5j * b[k - 1]
        c[n - k] = 0.5 * a[k] + 0.5j * b[k - 1]
    return TrigPoly(c, interval, is_real=was_real)


def enforce_real_symmetry(p: TrigPoly) -> TrigPoly:
    """Average away the rounding-level asymmetry of coefficients built from
    real samples, zero the imaginary part of c_0, and mark the result real."""
    return TrigPoly(_symmetrize(p.coeffs), p.interval, is_real=True)


def transplant(p: TrigPoly, target: Interval) -> TrigPoly:
    """Carry p to a translated interval of the same period.

    The basis exp(i*k*omega*t) stays fixed in absolute coordinates, so the
    transplanted function g(t) = p(t - shift) picks up the phase factors
    exp(-i*k*omega*shift); translating cos(t) from [-pi, pi] to [0, 2*pi]
    therefore negates its coefficients.
    """
    L = p.interval.length
    if abs(target.length - L) > 4 * EPS * L:
        raise IntervalMismatchError(
            f"transplant requires equal periods, got {L} and {target.length}")
    shift = target.a - p.interval.a
    frac_iv = Interval(shift, shift + L) if shift != 0.0 else None
    n = p.degree
    if len(p) % 2:
        ks = np.arange(-n, n + 1)
        phases = _mode_phases(ks, frac_iv) if frac_iv else np.ones(len(p))
        return TrigPoly(p.coeffs * phases, target, is_real=p.is_real)
    ks = np.arange(-(n - 1), n)
    out = p.coeffs.copy()
    if frac_iv:
        out[1:] *= _mode_phases(ks, frac_iv)
    # the top cosine stays anchored to the (translated) grid: amplitude unchanged
    return TrigPoly(out, target, is_real=p.is_real)


# ---------------------------------------------------------------------------
# coefficient dump format (shared by the CLI and the tests)
# ---------------------------------------------------------------------------

def format_coeffs(p: TrigPoly) -> str:
    """One line per mode: ``k re(c_k) im(c_k)`` with 17 significant digits."""
    n = p.degree
    hi = n - 1 if p.has_even_storage else n
    lines = []
    for k in range(-n, hi + 1):
        c = p.coeffs[k + n]
        lines.append(f"{k} {c.real:.17g} {c.imag:.17g}")
    return "\n".join(lines) + "\n"


def parse_coeffs(text: str) -> np.ndarray:
    """Parse the dump format back into a canonical coefficient vector."""
    ks, cs = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'k re im', got {line!r}")
        ks.append(int(parts[0]))
        cs.append(complex(float(parts[1]), float(parts[2])))
    if not ks:
        raise InvalidSizeError("empty coefficient dump")
    ks = np.asarray(ks)
    order = np.argsort(ks)
    ks, cs = ks[order], np.asarray(cs)[order]
    if not np.array_equal(ks, np.arange(ks[0], ks[-1] + 1)):
        raise ValueError("coefficient dump must cover a contiguous mode range")
    lo, hi = int(ks[0]), int(ks[-1])
    if lo != -hi and lo != -(hi + 1):
        raise ValueError(f"mode range [{lo}, {hi}] is not centered")
    return cs
