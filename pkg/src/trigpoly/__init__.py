"""trigpoly: machine-precision computing with smooth periodic functions.

Functions are represented by trigonometric polynomials of adaptively
determined degree; on top of that representation the package offers
evaluation, calculus, rootfinding, quadrature, convolution, minimax
approximation, and Fourier spectral collocation for periodic ODEs.
"""

from ._kernels import backend as kernel_backend, set_backend as set_kernel_backend
from .approx import (
    AnalyticStrip,
    BoundedVariation,
    RemezResult,
    approx_error_bound,
    coeff_bound,
    interp_nonuniform,
    trap_error_bound,
    trigremez,
)
from .calculus import (
    add,
    circconv,
    differentiate,
    extrema,
    integral,
    multiply,
    norm2,
    roots,
    sup_norm,
)
from .construct import (
    BuildOptions,
    build_adaptive,
    build_fixed,
    build_from_coeffs,
    chop_tail,
)
from .core import (
    Interval,
    TrigPoly,
    alias_index,
    cos_sin_to_exp,
    enforce_real_symmetry,
    eval_barycentric,
    exp_to_cos_sin,
    format_coeffs,
    grid_values,
    interp_coeffs,
    parse_coeffs,
    transplant,
    trig_points,
)
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
from .ode import (
    EigResult,
    LinearPeriodicOp,
    NonlinearProblem,
    diff_matrix,
    eigs,
    solve_linear,
    solve_nonlinear,
    unknown,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticStrip",
    "BoundedVariation",
    "BuildOptions",
    "ConvergenceError",
    "DuplicateNodeError",
    "EigResult",
    "Interval",
    "IntervalMismatchError",
    "InvalidSizeError",
    "LinearPeriodicOp",
    "NonlinearProblem",
    "ParityError",
    "ParseError",
    "PeriodicityError",
    "RealnessError",
    "RemezResult",
    "ResolutionError",
    "SingularOperatorError",
    "TrigPoly",
    "TrigPolyError",
    "ZeroFunctionError",
    "add",
    "alias_index",
    "approx_error_bound",
    "build_adaptive",
    "build_fixed",
    "build_from_coeffs",
    "chop_tail",
    "circconv",
    "coeff_bound",
    "cos_sin_to_exp",
    "diff_matrix",
    "differentiate",
    "eigs",
    "enforce_real_symmetry",
    "eval_barycentric",
    "exp_to_cos_sin",
    "extrema",
    "format_coeffs",
    "grid_values",
    "integral",
    "interp_coeffs",
    "interp_nonuniform",
    "kernel_backend",
    "multiply",
    "norm2",
    "parse_coeffs",
    "roots",
    "set_kernel_backend",
    "solve_linear",
    "solve_nonlinear",
    "sup_norm",
    "transplant",
    "trap_error_bound",
    "trig_points",
    "trigremez",
    "unknown",
]
