"""Hot evaluation kernels.

Point evaluation (Horner in z = e^{i*omega*t}) and barycentric interpolation
are the inner loops of nearly everything else, so they are jitted with numba.
A pure-numpy implementation of each kernel is kept as a fallback and can be
forced with the environment variable ``TRIGPOLY_DISABLE_NUMBA=1`` (useful for
debugging and for the benchmark in ``benchmarks/bench_kernels.py``).
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "TRIGPOLY_DISABLE_NUMBA"


def _env_disabled() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _env_disabled():
        raise ImportError("numba disabled via " + _ENV_FLAG)
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    njit = None
    _HAVE_NUMBA = False

_backend = "numba" if _HAVE_NUMBA else "numpy"


def backend() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return _backend


def set_backend(name: str) -> None:
    """Switch kernel backend at runtime (mainly for tests and benchmarks)."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not _HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not available")
    _backend = name


# ---------------------------------------------------------------------------
# numpy reference implementations
# ---------------------------------------------------------------------------

def _reduce_np(ts, a, L):
    ts = np.asarray(ts, dtype=np.float64)
    out = ts.copy()
    mask = (out < a) | (out >= a + L)
    if mask.any():
        out[mask] = out[mask] - L * np.floor((out[mask] - a) / L)
    return out


def _horner_np(coeffs, omega, a, L, ts):
    # coeffs canonical c_{-n}..c_n; Horner in z = e^{i*omega*t}
    n = (coeffs.shape[0] - 1) // 2
    t = _reduce_np(ts, a, L)
    th = omega * t
    z = np.exp(1j * th)
    acc = np.full(t.shape, coeffs[-1], dtype=np.complex128)
    for m in range(coeffs.shape[0] - 2, -1, -1):
        acc *= z
        acc += coeffs[m]
    return acc * np.exp(-1j * (n * th))


def _horner_real_np(coeffs, omega, a, L, ts):
    # conjugate-symmetric coeffs: c_0.real + 2*Re(sum_{k>=1} c_k z^k),
    # never forms an imaginary part
    n = (coeffs.shape[0] - 1) // 2
    t = _reduce_np(ts, a, L)
    th = omega * t
    z = np.exp(1j * th)
    s = np.zeros(t.shape, dtype=np.complex128)
    for k in range(n, 0, -1):
        s += coeffs[n + k]
        s *= z
    return coeffs[n].real + 2.0 * s.real


def _bary_np(vals, nodes, weights, use_cot, a, L, ts):
    t = _reduce_np(ts, a, L)
    half = np.pi / L
    out = np.empty(t.shape, dtype=vals.dtype)
    # chunked outer product keeps memory bounded for large point sets
    step = 2048
    with np.errstate(divide="ignore", invalid="ignore"):
        for lo in range(0, t.shape[0], step):
            tc = t[lo:lo + step]
            d = half * (tc[:, None] - nodes[None, :])
            s = np.sin(d)
            if use_cot:
                kern = weights * np.cos(d) / s
            else:
                kern = weights / s
            out[lo:lo + step] = (kern @ vals) / kern.sum(axis=1)
            hit_rows, hit_cols = np.nonzero(s == 0.0)
            for r, c in zip(hit_rows, hit_cols):
                out[lo + r] = vals[c]
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _horner_nb(coeffs, omega, a, L, ts):
        N = coeffs.shape[0]
        n = (N - 1) // 2
        out = np.empty(ts.shape[0], dtype=np.complex128)
        for i in range(ts.shape[0]):
            t = ts[i]
            if t < a or t >= a + L:
                t = t - L * np.floor((t - a) / L)
            th = omega * t
            z = complex(np.cos(th), np.sin(th))
            acc = coeffs[N - 1]
            for m in range(N - 2, -1, -1):
                acc = acc * z + coeffs[m]
            nth = n * th
            out[i] = acc * complex(np.cos(-nth), np.sin(-nth))
        return out

    @njit(cache=True)
    def _horner_real_nb(coeffs, omega, a, L, ts):
        N = coeffs.shape[0]
        n = (N - 1) // 2
        out = np.empty(ts.shape[0], dtype=np.float64)
        for i in range(ts.shape[0]):
            t = ts[i]
            if t < a or t >= a + L:
                t = t - L * np.floor((t - a) / L)
            th = omega * t
            z = complex(np.cos(th), np.sin(th))
            s = complex(0.0, 0.0)
            for k in range(n, 0, -1):
                s = (s + coeffs[n + k]) * z
            out[i] = coeffs[n].real + 2.0 * s.real
        return out

    @njit(cache=True)
    def _bary_nb(vals, nodes, weights, use_cot, a, L, ts):
        N = nodes.shape[0]
        half = np.pi / L
        out = np.empty(ts.shape[0], dtype=vals.dtype)
        for i in range(ts.shape[0]):
            t = ts[i]
            if t < a or t >= a + L:
                t = t - L * np.floor((t - a) / L)
            num = vals[0] * 0.0
            den = 0.0
            hit = -1
            for k in range(N):
                d = half * (t - nodes[k])
                s = np.sin(d)
                if s == 0.0:
                    hit = k
                    break
                if use_cot:
                    kern = weights[k] * np.cos(d) / s
                else:
                    kern = weights[k] / s
                num = num + kern * vals[k]
                den = den + kern
            if hit >= 0:
                out[i] = vals[hit]
            else:
                out[i] = num / den
        return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def horner_eval(coeffs, omega, a, L, ts):
    """Evaluate sum_k c_k e^{i k omega t} (canonical odd coeffs) at points ts."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if _backend == "numba":
        return _horner_nb(coeffs, float(omega), float(a), float(L), ts)
    return _horner_np(coeffs, omega, a, L, ts)


def horner_eval_real(coeffs, omega, a, L, ts):
    """Same as :func:`horner_eval` for conjugate-symmetric coeffs; exactly real output."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if _backend == "numba":
        return _horner_real_nb(coeffs, float(omega), float(a), float(L), ts)
    return _horner_real_np(coeffs, omega, a, L, ts)


def bary_eval(vals, nodes, weights, use_cot, a, L, ts):
    """Barycentric evaluation at points ts; csc kernel unless use_cot."""
    ts = np.ascontiguousarray(ts, dtype=np.float64)
    nodes = np.ascontiguousarray(nodes, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if np.iscomplexobj(vals):
        vals = np.ascontiguousarray(vals, dtype=np.complex128)
    else:
        vals = np.ascontiguousarray(vals, dtype=np.float64)
    if _backend == "numba":
        return _bary_nb(vals, nodes, weights, bool(use_cot), float(a), float(L), ts)
    return _bary_np(vals, nodes, weights, bool(use_cot), a, L, ts)
