"""Special functions appearing in the transform kernels.

Everything here is hand-built on double precision:

* complex gamma on the critical line Re s = 1/2 (Lanczos),
* the psi function at negative half-integers (downward recurrence from
  psi(1/2) = -gamma - 2 ln 2),
* Fresnel integrals S(x) = sqrt(2/pi) int_0^sqrt(x) sin(t^2) dt and the
  cosine companion (power series for small argument, a rotated-contour
  Gauss-Laguerre form for large argument),
* the modified Bessel function K0 (series below 2, Gauss-Hermite form of
  exp(-x) int e^-v v^-1/2 (v+2x)^-1/2 dv above),
* the Lommel kernel L(x) = int_0^inf y K0(y)/sqrt(y^2+x^2) dy together with
  the scaled accessors used by the composition kernels,
* Pochhammer products (3/2)_{2k}, plain and log-magnitude form.

scipy / mpmath counterparts serve as independent oracles in the test suite
only; nothing here imports them.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .quadrature import Exponential, QuadratureConfig, integrate_semiinf

__all__ = [
    "EULER_GAMMA",
    "bessel_k0",
    "digamma_neg_half",
    "fresnel_pair",
    "fresnel_phase_remainder",
    "gamma_critical",
    "lommel_half_scaled",
    "lommel_kernel",
    "lommel_threehalf_scaled",
    "pochhammer_3half",
    "pochhammer_3half_log",
]

EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992

TAU_MAX = 200.0          # |Gamma(1/2+i tau)| underflows usefully beyond this
SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)

# Lanczos approximation, g = 7, 9 coefficients; relative error ~1e-13 on
# Re z >= 1/2.
_LANCZOS_G = 7.0
_LANCZOS_C = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])


def _gamma_right_half(z):
    """Lanczos gamma for complex z with Re z >= 0.5 (array friendly)."""
    z = np.asarray(z, dtype=complex)
    zm1 = z - 1.0
    acc = np.full(z.shape, _LANCZOS_C[0], dtype=complex)
    for k in range(1, len(_LANCZOS_C)):
        acc = acc + _LANCZOS_C[k] / (zm1 + k)
    t = zm1 + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (zm1 + 0.5) * np.exp(-t) * acc


def gamma_complex(z):
    """Gamma(z) for complex z with Re z > 0 (Lanczos; array friendly)."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(z_arr.real <= 0):
        raise DomainError("gamma_complex requires Re z > 0")
    out = _gamma_right_half(z_arr)
    if np.isscalar(z) or z_arr.ndim == 0:
        return complex(out)
    return out


def gamma_critical(tau):
    """Gamma(1/2 + i tau); conjugate-symmetric by construction.

    Rejected beyond |tau| = 200 where the magnitude sqrt(pi/cosh(pi tau))
    underflows toward denormals.
    """
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(np.abs(tau_arr) > TAU_MAX) or not np.all(np.isfinite(tau_arr)):
        raise DomainError("gamma_critical requires finite |tau| <= %g" % TAU_MAX)
    z = 0.5 + 1j * np.abs(tau_arr)
    out = _gamma_right_half(z)
    out = np.where(tau_arr < 0, np.conj(out), out)
    if np.isscalar(tau) or tau_arr.ndim == 0:
        return complex(out)
    return out


def digamma_neg_half(k: int) -> float:
    """psi(-1/2 - 2k) by downward recurrence from psi(1/2)."""
    if k < 0 or k > 200:
        raise DomainError("digamma_neg_half requires 0 <= k <= 200")
    psi = -EULER_GAMMA - 2.0 * math.log(2.0)
    # psi(x-1) = psi(x) - 1/(x-1); walk 1/2 -> -1/2 -> ... -> -1/2-2k
    for j in range(1, 2 * k + 2):
        psi += 1.0 / (j - 0.5)
    return psi


# ---------------------------------------------------------------------------
# Fresnel integrals, paper convention S(x) = sqrt(2/pi) int_0^sqrt(x) sin t^2 dt

_LAG_NODES, _LAG_WEIGHTS = np.polynomial.laguerre.laggauss(64)

_FRESNEL_SPLIT = 4.0


def _fresnel_series(y):
    """(S, C) for 0 <= y <= _FRESNEL_SPLIT via Maclaurin series in sqrt(y)."""
    y = np.asarray(y, dtype=float)
    z = np.sqrt(y)
    z4 = z ** 4
    a = z ** 3          # z^{4k+3}/(2k+1)!
    b = z.copy()        # z^{4k+1}/(2k)!
    s = a / 3.0
    c = b.copy()
    sign = -1.0
    for k in range(1, 40):
        a = a * z4 / ((2 * k) * (2 * k + 1))
        b = b * z4 / ((2 * k - 1) * (2 * k))
        s = s + sign * a / (4 * k + 3)
        c = c + sign * b / (4 * k + 1)
        sign = -sign
        if np.all(a + b < 1e-18):
            break
    return SQRT_2_OVER_PI * s, SQRT_2_OVER_PI * c


def _fresnel_tail_v(y):
    """V(y) = int_0^inf e^-v (y + i v)^{-1/2} dv by Gauss-Laguerre."""
    y = np.asarray(y, dtype=float)
    v = _LAG_NODES[:, None]
    w = _LAG_WEIGHTS[:, None]
    vals = (y[None, :] + 1j * v) ** -0.5
    return (w * vals).sum(axis=0)


def fresnel_pair(x):
    """(S(x), C(x)) in the sqrt-argument convention; both -> 1/2 as x -> inf."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise DomainError("fresnel_pair requires x >= 0")
    scalar = np.isscalar(x) or x_arr.ndim == 0
    y = np.atleast_1d(x_arr)
    S = np.empty_like(y)
    C = np.empty_like(y)
    small = y <= _FRESNEL_SPLIT
    if np.any(small):
        S[small], C[small] = _fresnel_series(y[small])
    if np.any(~small):
        yl = y[~small]
        V = _fresnel_tail_v(yl)
        Z = SQRT_2_OVER_PI * np.exp(1j * yl) * 0.5j * V
        C[~small] = 0.5 - Z.real
        S[~small] = 0.5 - Z.imag
    if scalar:
        return float(S[0]), float(C[0])
    return S, C


def fresnel_phase_remainder(x):
    """(C(x)-1/2) cos x + (S(x)-1/2) sin x, evaluated without cancellation.

    This is the deviation of the Fresnel-weighted Hartley kernel from its
    oscillatory mean; it decays like -sqrt(2/pi)/(4 x^{3/2}) and carries no
    oscillation of its own.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise DomainError("fresnel_phase_remainder requires x >= 0")
    scalar = np.isscalar(x) or x_arr.ndim == 0
    y = np.atleast_1d(x_arr)
    out = np.empty_like(y)
    small = y <= _FRESNEL_SPLIT
    if np.any(small):
        ys = y[small]
        S, C = _fresnel_series(ys)
        out[small] = (C - 0.5) * np.cos(ys) + (S - 0.5) * np.sin(ys)
    if np.any(~small):
        V = _fresnel_tail_v(y[~small])
        out[~small] = 0.5 * SQRT_2_OVER_PI * V.imag
    if scalar:
        return float(out[0])
    return out


# ---------------------------------------------------------------------------
# modified Bessel K0

_HERM_NODES, _HERM_WEIGHTS = np.polynomial.hermite.hermgauss(96)
_K0_SPLIT = 2.0


def _k0_series(x):
    """K0 for 0 < x <= 2 from the standard logarithmic series."""
    x = np.asarray(x, dtype=float)
    q = 0.25 * x * x
    term = np.ones_like(x)
    i0 = np.ones_like(x)
    acc = np.zeros_like(x)
    h = 0.0
    for k in range(1, 40):
        term = term * q / (k * k)
        i0 = i0 + term
        h += 1.0 / k
        acc = acc + term * h
        if np.all(term < 1e-19):
            break
    return -(np.log(0.5 * x) + EULER_GAMMA) * i0 + acc


def _k0_large(x):
    """K0 for x > 2: exp(-x) * int e^{-w^2} (w^2 + 2x)^{-1/2} dw, Gauss-Hermite."""
    x = np.asarray(x, dtype=float)
    w2 = (_HERM_NODES ** 2)[:, None]
    vals = (w2 + 2.0 * x[None, :]) ** -0.5
    return np.exp(-x) * (_HERM_WEIGHTS[:, None] * vals).sum(axis=0)


def bessel_k0(x):
    """K0(x) for x > 0."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise DomainError("bessel_k0 requires x > 0")
    scalar = np.isscalar(x) or x_arr.ndim == 0
    y = np.atleast_1d(x_arr)
    out = np.empty_like(y)
    small = y <= _K0_SPLIT
    if np.any(small):
        out[small] = _k0_series(y[small])
    if np.any(~small):
        out[~small] = _k0_large(y[~small])
    if scalar:
        return float(out[0])
    return out


# ---------------------------------------------------------------------------
# Lommel kernel L(x) = int_0^inf y K0(y) / sqrt(y^2 + x^2) dy

_LOMMEL_CFG = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-10,
                               max_subdivisions=4000)
_LOMMEL_ASYMP_SPLIT = 30.0


def _lommel_asymptotic(x: float) -> float:
    # (1/x) sum (-1)^k (2k)!/x^{2k}, truncated at the smallest term
    total = 0.0
    term = 1.0
    k = 0
    while True:
        total += term
        k += 1
        nxt = -term * (2 * k) * (2 * k - 1) / (x * x)
        if abs(nxt) >= abs(term) or k > 40:
            break
        term = nxt
    return total / x


def lommel_kernel(x: float) -> float:
    """L(x) in (0, pi/2), strictly decreasing; L(0+) = pi/2."""
    if x <= 0:
        raise DomainError("lommel_kernel requires x > 0")
    if x >= _LOMMEL_ASYMP_SPLIT:
        return _lommel_asymptotic(x)

    def integrand(y):
        return y * bessel_k0(y) / np.sqrt(y * y + x * x)

    res = integrate_semiinf(integrand, Exponential(1.0), _LOMMEL_CFG)
    return res.value


def lommel_half_scaled(x: float) -> float:
    """(2 sqrt(x)/pi) * S_{-1/2,1/2}(x), computed as (2/pi) L(x)."""
    return (2.0 / math.pi) * lommel_kernel(x)


def lommel_threehalf_scaled(x: float) -> float:
    """(2 x^{-3/2}/pi) * S_{-3/2,-1/2}(1/x), computed as (2/pi) L(1/x)/x^2."""
    if x <= 0:
        raise DomainError("lommel_threehalf_scaled requires x > 0")
    return (2.0 / math.pi) * lommel_kernel(1.0 / x) / (x * x)


# ---------------------------------------------------------------------------
# Pochhammer (3/2)_{2k}

def pochhammer_3half(k: int) -> float:
    """(3/2)_{2k} as a float; overflows to inf around k = 86."""
    if k < 0 or k > 200:
        raise DomainError("pochhammer_3half requires 0 <= k <= 200")
    logmag, _ = pochhammer_3half_log(k)
    if logmag > 709.0:
        return math.inf
    return math.exp(logmag)


def pochhammer_3half_log(k: int):
    """(log magnitude, sign) of (3/2)_{2k}; sign is always +1."""
    if k < 0 or k > 200:
        raise DomainError("pochhammer_3half_log requires 0 <= k <= 200")
    logmag = 0.0
    for j in range(2 * k):
        logmag += math.log(1.5 + j)
    return logmag, 1.0
