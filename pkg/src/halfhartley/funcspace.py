"""Function representations, the reciprocal-closed grid, and test catalog.

Functions live as evaluators (:class:`RealFunction`) wherever possible;
:class:`GridFunction` holds samples on a geometric grid whose node set is
exactly closed under x -> 1/x, so reciprocal-argument terms reduce to index
reversal.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import special as _sps

from .errors import NotFoundError
from . import specfun
from .quadrature import (
    Algebraic,
    CompactSupport,
    DecayHint,
    Exponential,
    Gaussian,
    QuadratureConfig,
    DEFAULT_CONFIG,
    _adaptive,
    integrate_finite,
    integrate_semiinf,
)

__all__ = [
    "DEFAULT_GRID",
    "GridFunction",
    "GridSpec",
    "RealFunction",
    "catalog",
    "catalog_names",
    "l2_norm",
    "sample",
    "zero_function",
]

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class RealFunction:
    """Evaluator-backed function on (0, oo) with decay metadata.

    ``known_mellin``, when present, maps the critical-line ordinate tau to
    the Mellin transform at s = 1/2 + i tau and satisfies conjugate
    symmetry.  ``references`` carries closed-form transform references used
    by the test suites (keys like "fc", "fs", "stieltjes", "l2_norm").
    """

    label: str
    evaluator: Callable[[np.ndarray], np.ndarray]
    decay_hint: DecayHint
    known_mellin: Optional[Callable[[np.ndarray], np.ndarray]] = None
    references: dict = field(default_factory=dict)

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        out = np.asarray(self.evaluator(np.atleast_1d(x_arr)), dtype=float)
        if np.isscalar(x) or x_arr.ndim == 0:
            return float(out[0])
        return out


@dataclass(frozen=True)
class GridSpec:
    """Geometric grid x_k = ratio**k for k = -half_span .. half_span."""

    ratio: float = 2.0 ** 0.125
    half_span: int = 64

    def __post_init__(self):
        if not self.ratio > 1.0:
            raise ValueError("ratio must exceed 1")
        if self.half_span < 1:
            raise ValueError("half_span must be >= 1")

    @property
    def log_step(self) -> float:
        return math.log(self.ratio)

    @property
    def size(self) -> int:
        return 2 * self.half_span + 1

    def nodes(self) -> np.ndarray:
        k = np.arange(-self.half_span, self.half_span + 1)
        return np.exp(k * self.log_step)


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class GridFunction:
    spec: GridSpec
    values: np.ndarray
    source: Optional[RealFunction] = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.spec.size,):
            raise ValueError("values length must match the grid")
        if not np.all(np.isfinite(vals)):
            raise ValueError("grid values must be finite")
        object.__setattr__(self, "values", vals)

    def reciprocal_values(self) -> np.ndarray:
        """Samples of x -> f(1/x): exact index reversal, no interpolation."""
        return self.values[::-1].copy()

    def to_csv(self, target) -> None:
        text = "x,value\n" + "".join(
            "%.17g,%.17g\n" % (x, v)
            for x, v in zip(self.spec.nodes(), self.values)
        )
        if hasattr(target, "write"):
            target.write(text)
        else:
            with open(target, "w") as fh:
                fh.write(text)


def sample(f: RealFunction, spec: GridSpec = DEFAULT_GRID) -> GridFunction:
    return GridFunction(spec, f(spec.nodes()), source=f)


def _squared_hint(hint: DecayHint) -> DecayHint:
    if isinstance(hint, Exponential):
        return Exponential(2.0 * hint.rate)
    if isinstance(hint, Gaussian):
        return Gaussian(2.0 * hint.rate)
    if isinstance(hint, Algebraic):
        return Algebraic(2.0 * hint.power)
    return hint


def l2_norm(f: GridFunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """L2 norm of f over (0, oo).

    With a source evaluator the grid panels are refined by quadrature and
    the off-grid head/tail integrated from the decay hint; without one the
    log-space trapezoid with endpoint-slope corrections and hint-based tail
    estimates is used.
    """
    nodes = f.spec.nodes()
    if f.source is not None:
        src = f.source

        def fsq(t):
            v = np.asarray(src.evaluator(np.asarray(t, dtype=float)))
            return v * v

        head = integrate_finite(fsq, 0.0, nodes[0], cfg).value
        body = _adaptive(fsq, list(nodes), cfg).value
        hint2 = _squared_hint(src.decay_hint)
        if isinstance(hint2, CompactSupport) and hint2.upper <= nodes[-1]:
            tail = 0.0
        else:
            tail = integrate_semiinf(fsq, hint2, cfg, start=nodes[-1]).value
        return math.sqrt(max(head + body + tail, 0.0))

    # grid-only path: trapezoid in u = log x with Euler-Maclaurin endpoint
    # corrections
    delta = f.spec.log_step
    F = nodes * f.values ** 2
    total = delta * (F.sum() - 0.5 * (F[0] + F[-1]))
    if f.spec.size >= 3:
        dF_left = (F[1] - F[0]) / delta
        dF_right = (F[-1] - F[-2]) / delta
        total -= delta ** 2 / 12.0 * (dF_right - dF_left)
    return math.sqrt(max(total, 0.0))


def zero_function() -> RealFunction:
    return RealFunction(
        label="zero",
        evaluator=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        decay_hint=CompactSupport(upper=1.0),
        known_mellin=lambda tau: np.zeros_like(np.asarray(tau, dtype=float),
                                               dtype=complex),
        references={"l2_norm": 0.0},
    )


# ---------------------------------------------------------------------------
# catalog

def _exp_stieltjes(x):
    """exp(x) E1(x), switching to the asymptotic series for large x."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x <= 50.0
    if np.any(small):
        xs = x[small]
        out[small] = np.exp(xs) * _sps.exp1(xs)
    if np.any(~small):
        xl = x[~small]
        out[~small] = (1.0 - 1.0 / xl * (1.0 - 2.0 / xl * (1.0 - 3.0 / xl))) / xl
    return out


def _smoothstep(v):
    """C-infinity ramp: 0 for v <= 0, 1 for v >= 1."""
    v = np.asarray(v, dtype=float)
    lo = v <= 0.0
    hi = v >= 1.0
    mid = ~(lo | hi)
    out = np.zeros_like(v)
    out[hi] = 1.0
    if np.any(mid):
        vm = v[mid]
        a = np.exp(-1.0 / vm)
        b = np.exp(-1.0 / (1.0 - vm))
        out[mid] = a / (a + b)
    return out


_BUMP_NORM_CACHE: dict = {}


def _bump_raw(t):
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = (t > 1.0) & (t < 2.0)
    if np.any(inside):
        ti = t[inside]
        out[inside] = np.exp(-1.0 / ((ti - 1.0) * (2.0 - ti)))
    return out


def _bump_normalization() -> float:
    if "c" not in _BUMP_NORM_CACHE:
        cfg = QuadratureConfig(abs_tol=1e-14, rel_tol=1e-13)
        mass = integrate_finite(lambda t: _bump_raw(t) ** 2, 1.0, 2.0, cfg).value
        _BUMP_NORM_CACHE["c"] = 1.0 / math.sqrt(mass)
    return _BUMP_NORM_CACHE["c"]


def _catalog_exp() -> RealFunction:
    return RealFunction(
        label="exp",
        evaluator=lambda t: np.exp(-t),
        decay_hint=Exponential(1.0),
        known_mellin=lambda tau: specfun.gamma_critical(tau),
        references={
            "fc": lambda x: SQRT_2_OVER_PI / (1.0 + x * x),
            "fs": lambda x: SQRT_2_OVER_PI * x / (1.0 + x * x),
            "stieltjes": _exp_stieltjes,
            "l2_norm": math.sqrt(0.5),
        },
    )


def _catalog_texp() -> RealFunction:
    return RealFunction(
        label="texp",
        evaluator=lambda t: t * np.exp(-t),
        decay_hint=Exponential(1.0),
        known_mellin=lambda tau: (0.5 + 1j * np.asarray(tau))
        * specfun.gamma_critical(tau),
        references={
            "fc": lambda x: SQRT_2_OVER_PI * (1.0 - x * x) / (1.0 + x * x) ** 2,
            "fs": lambda x: SQRT_2_OVER_PI * 2.0 * x / (1.0 + x * x) ** 2,
            "l2_norm": 0.5,
        },
    )


def _catalog_gauss() -> RealFunction:
    return RealFunction(
        label="gauss",
        evaluator=lambda t: np.exp(-t * t),
        decay_hint=Gaussian(1.0),
        known_mellin=lambda tau: 0.5
        * specfun.gamma_complex(0.25 + 0.5j * np.asarray(tau, dtype=float)),
        references={
            "fc": lambda x: np.exp(-x * x / 4.0) / math.sqrt(2.0),
            "fs": lambda x: SQRT_2_OVER_PI * _sps.dawsn(x / 2.0),
            "l2_norm": (math.pi / 8.0) ** 0.25,
        },
    )


def _catalog_bump() -> RealFunction:
    def ev(t):
        return _bump_normalization() * _bump_raw(t)

    return RealFunction(
        label="bump",
        evaluator=ev,
        decay_hint=CompactSupport(upper=2.0, lower=1.0),
        references={"l2_norm": 1.0},
    )


def _catalog_recip_sym() -> RealFunction:
    def ev(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        pos = t > 0.125
        if np.any(pos):
            tp = t[pos]
            out[pos] = (np.exp(-tp) / np.sqrt(tp)
                        * _smoothstep((tp - 0.125) / 0.375))
        return out

    return RealFunction(
        label="recip_sym",
        evaluator=ev,
        decay_hint=Exponential(1.0),
    )


_CATALOG = {
    "exp": _catalog_exp,
    "texp": _catalog_texp,
    "gauss": _catalog_gauss,
    "bump": _catalog_bump,
    "recip_sym": _catalog_recip_sym,
}
_CATALOG_CACHE: dict = {}


def catalog_names():
    return sorted(_CATALOG)


def catalog(name: str) -> RealFunction:
    """Reference test functions with attached closed-form transforms."""
    if name not in _CATALOG:
        raise NotFoundError("unknown catalog function %r (have %s)"
                            % (name, ", ".join(catalog_names())))
    if name not in _CATALOG_CACHE:
        _CATALOG_CACHE[name] = _CATALOG[name]()
    return _CATALOG_CACHE[name]
