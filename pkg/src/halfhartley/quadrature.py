"""Quadrature primitives used by every transform in the package.

Four entry points:

* :func:`integrate_finite` -- adaptive Gauss-Kronrod (7/15) with bisection,
* :func:`integrate_semiinf` -- semi-infinite integrals with decay-aware
  truncation and (for algebraic tails) a fitted power-law tail completion,
* :func:`integrate_pv` -- Cauchy principal values by symmetric subtraction
  over a multiplicative window around the pole,
* :func:`integrate_oscillatory` -- integrals against sin/cos on the half
  axis, partitioned at the kernel zeros and accelerated by iterated
  averaging of the partial sums.

All integrands must accept and return numpy arrays.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

__all__ = [
    "Algebraic",
    "CompactSupport",
    "ConvergenceError",
    "DecayHint",
    "Exponential",
    "Gaussian",
    "IntegralResult",
    "QuadratureConfig",
    "integrate_finite",
    "integrate_oscillatory",
    "integrate_pv",
    "integrate_semiinf",
]

_EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    """Subdivision budget exhausted; ``best`` carries the last estimate."""

    def __init__(self, message: str, best: "IntegralResult"):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation controls shared by all primitives."""

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    truncation_tail_bound: float = 1e-12
    pv_window: float = 0.1

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if not (0 < self.pv_window < 1):
            raise ValueError("pv_window must lie in (0, 1)")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.truncation_tail_bound <= 0:
            raise ValueError("truncation_tail_bound must be positive")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be nonnegative")


# ---------------------------------------------------------------------------
# decay hints

@dataclass(frozen=True)
class Exponential:
    """|f(t)| ~ C exp(-rate*t) for large t."""

    rate: float = 1.0


@dataclass(frozen=True)
class Gaussian:
    """|f(t)| ~ C exp(-rate*t**2) for large t."""

    rate: float = 1.0


@dataclass(frozen=True)
class Algebraic:
    """|f(t)| ~ C t**(-power) for large t."""

    power: float


@dataclass(frozen=True)
class CompactSupport:
    """f vanishes outside [lower, upper]."""

    upper: float
    lower: float = 0.0


DecayHint = Union[Exponential, Gaussian, Algebraic, CompactSupport]


# ---------------------------------------------------------------------------
# Gauss-Kronrod 7/15 panel

# Positive half of the 15-point Kronrod rule: (node, Gauss weight, Kronrod
# weight); Gauss weight 0 marks the Kronrod-only extension nodes.
_RULE_POS = np.array([
    (0.000000000000000000000000000000000,
     0.417959183673469387755102040816327, 0.209482141084727828012999174891714),
    (0.207784955007898467600689403773245,
     0.0,                                 0.204432940075298892414161999234649),
    (0.405845151377397166906606412076961,
     0.381830050505118944950369775488975, 0.190350578064785409913256402421014),
    (0.586087235467691130294144838258730,
     0.0,                                 0.169004726639267902826583426598550),
    (0.741531185599394439863864773280788,
     0.279705391489276667901467771423780, 0.140653259715525918745189590510238),
    (0.864864423359769072789712788640926,
     0.0,                                 0.104790010322250183839876322541518),
    (0.949107912342758524526189684047851,
     0.129484966168869693270611432679082, 0.063092092629978553290700663189204),
    (0.991455371120812639206854697526329,
     0.0,                                 0.022935322010529224963732008058970),
])

_NODES = np.concatenate([-_RULE_POS[:0:-1, 0], _RULE_POS[:, 0]])
_WG = np.concatenate([_RULE_POS[:0:-1, 1], _RULE_POS[:, 1]])
_WK = np.concatenate([_RULE_POS[:0:-1, 2], _RULE_POS[:, 2]])


def _panel(f: Callable, a: float, b: float):
    """One 15-point Kronrod panel with a QUADPACK-style error estimate."""
    h = 0.5 * (b - a)
    c = 0.5 * (a + b)
    x = c + h * _NODES
    y = np.asarray(f(x), dtype=float)
    resk = h * float(_WK @ y)
    resg = h * float(_WG @ y)
    resabs = abs(h) * float(_WK @ np.abs(y))
    mean = resk / (b - a) if b != a else 0.0
    resasc = abs(h) * float(_WK @ np.abs(y - mean))
    err = abs(resk - resg)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    err = max(err, 50.0 * _EPS * resabs)
    return resk, err, 15


def _adaptive(f: Callable, breakpoints, cfg: QuadratureConfig) -> IntegralResult:
    """Adaptive bisection over an initial partition, worst panel first."""
    heap = []
    total = 0.0
    err_total = 0.0
    evals = 0
    seq = 0
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        if a == b:
            continue
        v, e, n = _panel(f, a, b)
        evals += n
        total += v
        err_total += e
        heapq.heappush(heap, (-e, seq, a, b, v))
        seq += 1
    splits = 0
    while heap:
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if err_total <= tol:
            break
        if splits >= cfg.max_subdivisions:
            raise ConvergenceError(
                "subdivision budget exhausted (err=%.3e, tol=%.3e)" % (err_total, tol),
                IntegralResult(total, err_total, evals),
            )
        neg_e, _, a, b, v = heapq.heappop(heap)
        e = -neg_e
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            # interval at floating resolution; keep its contribution
            err_total -= e
            continue
        v1, e1, n1 = _panel(f, a, m)
        v2, e2, n2 = _panel(f, m, b)
        evals += n1 + n2
        total += v1 + v2 - v
        err_total += e1 + e2 - e
        heapq.heappush(heap, (-e1, seq, a, m, v1)); seq += 1
        heapq.heappush(heap, (-e2, seq, m, b, v2)); seq += 1
        splits += 1
    return IntegralResult(total, err_total, evals)


def integrate_finite(f: Callable, a: float, b: float,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """Integrate f over [a, b]."""
    if a > b:
        raise ValueError("integrate_finite requires a <= b")
    if a == b:
        return IntegralResult(0.0, 0.0, 0)
    # seed with a few panels when the interval is long, so the heap starts
    # from a sensible partition
    span = b - a
    if span > 8.0:
        n0 = min(16, max(2, int(math.log2(span))))
        pts = list(np.linspace(a, b, n0 + 1))
    else:
        pts = [a, b]
    return _adaptive(f, pts, cfg)


def _combine(*results: IntegralResult) -> IntegralResult:
    return IntegralResult(
        sum(r.value for r in results),
        sum(r.error_estimate for r in results),
        sum(r.evaluations for r in results),
    )


def _hinted_tail(f: Callable, T: float, hint: DecayHint) -> float:
    """Crude bound for |integral of f beyond T| implied by the decay hint."""
    v = abs(float(np.asarray(f(np.array([T])))[0]))
    if isinstance(hint, Exponential):
        return v / hint.rate
    if isinstance(hint, Gaussian):
        return v / (2.0 * hint.rate * max(T, 1e-300))
    if isinstance(hint, Algebraic):
        return v * T / (hint.power - 1.0)
    raise TypeError("no tail bound for %r" % (hint,))


def _truncation_point(f: Callable, hint: DecayHint, bound: float, start: float) -> float:
    if isinstance(hint, Exponential):
        T = max(start + 4.0 / hint.rate, 8.0 / hint.rate)
    elif isinstance(hint, Gaussian):
        T = max(start + 2.0 / math.sqrt(hint.rate), 4.0 / math.sqrt(hint.rate))
    else:
        T = max(2.0 * start, 16.0)
    for _ in range(200):
        if _hinted_tail(f, T, hint) <= bound:
            return T
        T *= 1.5
        if T > 1e12:
            return T
    return T


def _algebraic_tail_completion(f: Callable, T: float, power: float):
    """Fitted two-term power-law tail  c t^-p + d t^-p-1  integrated beyond T."""
    t1, t2 = T / 1.5, T
    v1 = float(np.asarray(f(np.array([t1])))[0])
    v2 = float(np.asarray(f(np.array([t2])))[0])
    p = power
    # solve c,d from v_i = c t_i^-p + d t_i^-p-1
    a11, a12 = t1 ** -p, t1 ** (-p - 1)
    a21, a22 = t2 ** -p, t2 ** (-p - 1)
    det = a11 * a22 - a12 * a21
    if det == 0.0 or not np.isfinite(det):
        tail = v2 * T / (p - 1.0)
        return tail, abs(tail)
    c = (v1 * a22 - v2 * a12) / det
    d = (a11 * v2 - a21 * v1) / det
    tail = c * T ** (1.0 - p) / (p - 1.0) + d * T ** (-p) / p
    # the unmodeled next order is ~ tail / T^2 relative, but stay conservative
    err = abs(tail) * min(1.0, 20.0 / T)
    return tail, err


def integrate_semiinf(f: Callable, decay_hint: DecayHint,
                      cfg: QuadratureConfig = DEFAULT_CONFIG,
                      start: float = 0.0) -> IntegralResult:
    """Integrate f over [start, oo) guided by its decay hint."""
    if isinstance(decay_hint, CompactSupport):
        lo = max(start, decay_hint.lower)
        if lo >= decay_hint.upper:
            return IntegralResult(0.0, 0.0, 0)
        return integrate_finite(f, lo, decay_hint.upper, cfg)
    if isinstance(decay_hint, Algebraic) and decay_hint.power <= 1.0:
        raise ValueError("algebraic decay with power <= 1 has a non-integrable tail")
    T = _truncation_point(f, decay_hint, cfg.truncation_tail_bound, start)
    # geometric breakpoints keep the adaptive heap from wasting panels
    pts = [start]
    step = max(1.0, start * 0.5)
    t = start + step
    while t < T:
        pts.append(t)
        step *= 2.0
        t = pts[-1] + step
    pts.append(T)
    res = _adaptive(f, pts, cfg)
    if isinstance(decay_hint, Algebraic):
        tail, terr = _algebraic_tail_completion(f, T, decay_hint.power)
        res = _combine(res, IntegralResult(tail, terr + cfg.truncation_tail_bound, 2))
    else:
        res = _combine(res, IntegralResult(0.0, cfg.truncation_tail_bound, 0))
    return res


def _shift_hint(hint: DecayHint) -> DecayHint:
    """Decay hint of g(t)/(t - x0) given the hint of g."""
    if isinstance(hint, Algebraic):
        return Algebraic(hint.power + 1.0)
    return hint


def integrate_pv(g: Callable, x0: float,
                 cfg: QuadratureConfig = DEFAULT_CONFIG,
                 decay_hint: DecayHint = Exponential(1.0)) -> IntegralResult:
    """PV integral of g(t)/(t - x0) over (0, oo).

    The window [x0(1-w), x0(1+w)] is handled by symmetric subtraction of
    g(x0): the subtracted integrand has a removable point at t = x0 and the
    pure pole integrates to zero over the (additively symmetric) window.
    """
    if x0 <= 0:
        raise ValueError("PV singularity must lie in (0, oo)")
    w = cfg.pv_window
    a = x0 * (1.0 - w)
    b = x0 * (1.0 + w)
    if a <= 0:
        raise ValueError("PV window collides with the origin")
    gc = float(np.asarray(g(np.array([x0])))[0])

    def subtracted(t):
        t = np.asarray(t, dtype=float)
        d = t - x0
        safe = np.abs(d) > 1e-13 * x0
        d_safe = np.where(safe, d, 1.0)
        q = (np.asarray(g(t)) - gc) / d_safe
        if not np.all(safe):
            h = 1e-7 * x0
            tp = np.array([x0 + h, x0 - h])
            gp = np.asarray(g(tp))
            deriv = (gp[0] - gp[1]) / (2 * h)
            q = np.where(safe, q, deriv)
        return q

    win = _adaptive(subtracted, [a, x0, b], cfg)

    def outer(t):
        t = np.asarray(t, dtype=float)
        return np.asarray(g(t)) / (t - x0)

    left = integrate_finite(outer, 0.0, a, cfg) if a > 0 else IntegralResult(0, 0, 0)
    if isinstance(decay_hint, CompactSupport):
        if decay_hint.upper <= b:
            right = IntegralResult(0.0, 0.0, 0)
        else:
            right = integrate_finite(outer, b, decay_hint.upper, cfg)
    else:
        right = integrate_semiinf(outer, _shift_hint(decay_hint), cfg, start=b)
    return _combine(win, left, right, IntegralResult(0.0, 0.0, 1))


def _averaged(partials: np.ndarray):
    """Iterated averaging of a sequence of partial sums; value and error."""
    row = partials.astype(float)
    best = row[-1]
    prev = best
    err = abs(best) + 1.0
    depth = 0
    while row.size > 1 and depth < 24:
        row = 0.5 * (row[:-1] + row[1:])
        delta = abs(row[-1] - prev)
        prev = row[-1]
        if delta < err:
            err = delta
            best = row[-1]
        depth += 1
    return best, err


def integrate_oscillatory(f: Callable, omega: float, kind: str,
                          decay_hint: DecayHint,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """Integrate f(t)*sin(omega t) or f(t)*cos(omega t) over (0, oo)."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    if kind not in ("sin", "cos"):
        raise ValueError("kind must be 'sin' or 'cos'")
    osc = np.sin if kind == "sin" else np.cos

    def integrand(t):
        t = np.asarray(t, dtype=float)
        return np.asarray(f(t)) * osc(omega * t)

    if isinstance(decay_hint, CompactSupport):
        lo, up = decay_hint.lower, decay_hint.upper
        if lo >= up:
            return IntegralResult(0.0, 0.0, 0)
        # resolve the oscillation: one breakpoint per half period
        n = int(min(4096, max(1, (up - lo) * omega / math.pi)))
        pts = list(np.linspace(lo, up, n + 1))
        return _adaptive(integrand, pts, cfg)

    if isinstance(decay_hint, (Exponential, Gaussian)):
        T_abs = _truncation_point(f, decay_hint, cfg.truncation_tail_bound, 0.0)
    else:
        T_abs = math.inf

    half = math.pi / omega
    first = half if kind == "sin" else 0.5 * half

    if T_abs <= max(4.0 * half, first):
        # decay kills the integral before it oscillates; plain truncation
        n = int(min(4096, max(1, T_abs / half)))
        pts = list(np.linspace(0.0, T_abs, n + 1))
        res = _adaptive(integrand, pts, cfg)
        return _combine(res, IntegralResult(0.0, cfg.truncation_tail_bound, 0))

    # half-period cells, iterated averaging of the partial sums
    max_cells = 48
    cell_cfg = QuadratureConfig(
        abs_tol=cfg.abs_tol / max_cells,
        rel_tol=cfg.rel_tol,
        max_subdivisions=max(cfg.max_subdivisions // 8, 64),
        truncation_tail_bound=cfg.truncation_tail_bound,
        pv_window=cfg.pv_window,
    )
    head = _adaptive(integrand, [0.0, first], cell_cfg)
    value0 = head.value
    evals = head.evaluations
    cells = []
    t0 = first
    for k in range(max_cells):
        t1 = t0 + half
        if t0 >= T_abs:
            break
        r = _adaptive(integrand, [t0, min(t1, T_abs)], cell_cfg)
        cells.append(r.value)
        evals += r.evaluations
        t0 = t1
        if t0 >= T_abs:
            break
    if not cells:
        return IntegralResult(value0, head.error_estimate, evals)
    partials = value0 + np.cumsum(cells)
    val, err = _averaged(partials)
    err = max(err, head.error_estimate)
    return IntegralResult(val, err, evals)
