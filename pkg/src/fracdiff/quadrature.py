"""Adaptive quadrature helpers for semi-infinite, exponentially damped integrands.

Thin wrappers around QUADPACK (scipy.integrate.quad) that add the two things
the rest of the package keeps needing: an explicit truncation point chosen
from a caller-supplied damping exponent, and honest error reporting that
includes the roundoff floor of large oscillating integrands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureFailure

_EPS = 2.2e-16


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for the adaptive integrators.

    ``upper_cutoff_margin`` is the number of e-foldings the damping exponent
    must reach before the tail is dropped; with the default 45 the discarded
    tail is below abs_tol/10 for any integrand of order unity.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000
    upper_cutoff_margin: float = 45.0

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0 and 0.0 < self.abs_tol < 1.0):
            raise ValueError("tolerances must lie in (0, 1)")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions must be >= 10")


DEFAULT_QUAD = QuadratureConfig()


def quad_finite(f: Callable[[float], float], a: float, b: float,
                cfg: QuadratureConfig = DEFAULT_QUAD) -> tuple[float, float]:
    """Integrate f on [a, b]; returns (value, error estimate).

    Raises QuadratureFailure only for hard failures (NaN, subdivision
    breakdown with a meaningless error estimate), not for honest roundoff
    reports on cancellation-heavy integrands.
    """
    val, err, info, *msg = quad(f, a, b, limit=cfg.max_subdivisions,
                                epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                                full_output=True)
    if math.isnan(val):
        raise QuadratureFailure(f"quadrature returned NaN on [{a}, {b}]")
    return val, err


def find_cutoff(damping: Callable[[float], float], start: float,
                margin: float = 45.0, hard_limit: float = 1e12) -> float:
    """Smallest doubling point W >= start with damping(W) >= margin and the
    damping still increasing (handles exponents that first decrease, as for
    orders above one)."""
    w = max(start, 1.0)
    while (damping(w) < margin or damping(2.0 * w) < damping(w)) and w < hard_limit:
        w *= 2.0
    return w


def integrand_peak(neg_log_envelope: Callable[[float], float], a: float,
                   b: float, samples: int = 200) -> float:
    """Max of exp(-neg_log_envelope) over [a, b] by coarse sampling.

    Used for the roundoff floor of oscillatory integrands whose envelope is
    exp(-g(w)) with g possibly dipping negative for fractional orders > 1.
    """
    xs = np.linspace(a, b, samples)
    g = np.array([neg_log_envelope(float(x)) for x in xs])
    m = float(np.min(g))
    return math.exp(-m) if m > -700 else math.inf


def roundoff_floor(peak: float, n_effective: float = 50.0) -> float:
    """Absolute accuracy floor of a double-precision quadrature whose
    integrand reaches ``peak`` in magnitude."""
    return n_effective * _EPS * peak


# Fixed tanh-sinh nodes, used where many integrals share one node set and a
# vectorised evaluation pays off (Bessel-K arrays, CDF tables).
def tanh_sinh_nodes(n: int = 120, h_max: float = 3.4) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_0^inf f(u) du under u = exp(pi/2 sinh(s))-style
    mapping restricted to u in (0, inf) via u = exp(s) substitution is not
    used here; this returns nodes for int_0^1 g(v) dv with the standard
    tanh-sinh map, which callers compose with their own change of variables.
    """
    s = np.linspace(-h_max, h_max, 2 * n + 1)
    h = s[1] - s[0]
    v = 0.5 * (1.0 + np.tanh(0.5 * math.pi * np.sinh(s)))
    dv = 0.25 * math.pi * np.cosh(s) / np.cosh(0.5 * math.pi * np.sinh(s)) ** 2
    return v, dv * h
