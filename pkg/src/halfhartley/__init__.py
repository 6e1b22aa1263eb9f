"""Half-Hartley transform toolkit.

Numerical realization of the half-Hartley transform, its iteration, and its
compositions with the Fourier cosine/sine transforms, each by independent
computational routes (nested quadrature, closed-form kernels, Mellin
multiplier calculus), together with the closed-form solvers for the
associated second-kind singular integral and integro-functional equations.
"""

from . import equations, funcspace, mellin, quadrature, specfun, transforms

__all__ = [
    "equations",
    "funcspace",
    "mellin",
    "quadrature",
    "specfun",
    "transforms",
]

__version__ = "0.1.0"
