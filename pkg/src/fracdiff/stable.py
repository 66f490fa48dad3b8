"""Stable densities in the Feller parametrisation.

p_alpha(x; gamma, eta) has characteristic function
exp(-eta |b|^alpha e^{-i pi gamma sgn(b)/2}); admissibility is the
Feller-Takayasu diamond |gamma| <= min(alpha, 2 - alpha), alpha != 1.

Two convergent series cover the line (Feller XVII.6, with the sign
conventions fixed against quadrature of the characteristic function):

  alpha in (1, 2], x >= 0:
      p(x; gamma, 1) = (1/pi) sum_{k>=1} (-x)^{k-1}
                       sin(k pi (gamma+alpha)/(2 alpha)) Gamma(1 + k/alpha) / k!
  alpha in (0, 1), x > 0:
      p(x; gamma, 1) = (alpha/pi) sum_{r>=0} (-1)^r x^{-alpha(r+1)-1}
                       sin((pi/2) (gamma+alpha) (r+1)) Gamma(alpha(r+1)) / r!

Both are term-by-term images of each other under the exact duality
p_alpha(x; gamma, 1) = x^{-1-alpha} p_{1/alpha}(x^{-alpha}; (gamma+alpha-1)/alpha, 1),
so a conditioning problem in one is a conditioning problem in the other; the
large-argument regime of the (1,2) branch therefore escalates to arbitrary
precision arithmetic instead of switching series, with the asymptotic tail
series as the cheap route when the tail is algebraic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, NonConvergent
from .specfun import EvalResult

__all__ = ["StableParams", "stable_density", "levy_half"]

_EPS = 2.2204460492503131e-16
_LN_HUGE = 709.0
_LN_TINY = -745.0

_MAX_TERMS_DOUBLE = 60_000
_MAX_TERMS_MP = 30_000


@dataclass(frozen=True)
class StableParams:
    """Index alpha, Feller skewness gamma, scale eta."""

    alpha: float
    gamma: float
    eta: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0) or self.alpha == 1.0:
            raise DomainError("alpha must lie in (0,1) u (1,2]")
        if abs(self.gamma) > min(self.alpha, 2.0 - self.alpha) + 1e-12:
            raise DomainError("gamma outside the Feller-Takayasu diamond")
        if not self.eta > 0.0:
            raise DomainError("eta must be positive")


def levy_half(y: float, c: float) -> float:
    """Closed form of p_{1/2}(y; 1/2, c) for y > 0: the one-sided Levy
    density (c/sqrt(2)) exp(-c^2/(4y)) / sqrt(2 pi y^3)."""
    if y <= 0.0:
        raise DomainError("levy_half requires y > 0")
    if c <= 0.0:
        raise DomainError("levy_half requires c > 0")
    a = c * c / (4.0 * y)
    if a > _LN_HUGE:
        return 0.0
    return c / math.sqrt(2.0) * math.exp(-a) / math.sqrt(2.0 * math.pi * y ** 3)


def stable_density(sp: StableParams, x: float, rel_tol: float = 1e-12) -> EvalResult:
    """Density value with a truncation/cancellation error estimate."""
    scale = sp.eta ** (-1.0 / sp.alpha)
    if x < 0.0:
        inner = stable_density(StableParams(sp.alpha, -sp.gamma, 1.0), -x * scale, rel_tol)
    else:
        inner = stable_density_reduced(sp.alpha, sp.gamma, x * scale, rel_tol)
    return EvalResult(scale * inner.value, scale * inner.abs_err, inner.method)


def stable_density_reduced(alpha: float, gamma: float, x: float,
                           rel_tol: float = 1e-12) -> EvalResult:
    """p_alpha(x; gamma, 1) for x >= 0."""
    if alpha == 2.0:
        # Gaussian with variance 2 (eta = 1); gamma must be 0 in the diamond
        return EvalResult(math.exp(-x * x / 4.0) / (2.0 * math.sqrt(math.pi)),
                          4.0 * _EPS, "closed-form")
    if alpha > 1.0:
        return _high_branch(alpha, gamma, x, rel_tol)
    return _low_branch(alpha, gamma, x, rel_tol)


# ---------------------------------------------------------------------------
# alpha in (1, 2)

def _high_branch(alpha: float, gamma: float, x: float, rel_tol: float) -> EvalResult:
    phase = math.pi * (gamma + alpha) / (2.0 * alpha)
    if x == 0.0:
        v = math.sin(phase) * math.gamma(1.0 + 1.0 / alpha) / math.pi
        return EvalResult(v, 4.0 * _EPS * abs(v), "series")

    n_est = (x * alpha ** (-1.0 / alpha)) ** (alpha / (alpha - 1.0))
    if n_est < 2_000.0:
        val, err, ok = _taylor_double(alpha, phase, x)
        if ok and err <= rel_tol * max(abs(val), 1e-300) + 1e-300:
            return EvalResult(val, err, "series")

    tail = _tail_series(alpha, gamma, x)
    if tail is not None:
        return tail

    if n_est > _MAX_TERMS_MP:
        raise NonConvergent(
            f"stable series needs ~{n_est:.0f} terms at x={x:g}, alpha={alpha:g}")
    return _taylor_mp(alpha, phase, x)


def _taylor_double(alpha: float, phase: float, x: float) -> tuple[float, float, bool]:
    lnx = math.log(x)
    total = comp = 0.0
    max_mag = 0.0
    k = 1
    while k <= _MAX_TERMS_DOUBLE:
        ln_t = (k - 1) * lnx + math.lgamma(1.0 + k / alpha) - math.lgamma(k + 1.0)
        if ln_t > _LN_HUGE:
            return 0.0, math.inf, False
        mag = math.exp(ln_t) if ln_t > _LN_TINY else 0.0
        term = (mag if k % 2 else -mag) * math.sin(k * phase)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        max_mag = max(max_mag, mag)
        if k > 8 and mag < 1e-17 * max(abs(total), 1e-300):
            break
        k += 1
    else:
        return 0.0, math.inf, False
    return total / math.pi, (4.0 * _EPS * max_mag + mag) / math.pi, True


def _tail_series(alpha: float, gamma: float, x: float) -> EvalResult | None:
    """Asymptotic x -> inf expansion; exact error bound by first omitted term.

    Returns None when unusable: all sine factors vanish (spectrally negative
    tail, gamma + alpha = 2) or the attainable accuracy is too poor.
    """
    if x < 1.0:
        return None
    s0 = math.sin(math.pi * (gamma + alpha) / 2.0)
    if abs(s0) < 1e-12 and abs(math.sin(math.pi * (gamma + alpha))) < 1e-12:
        # extremal case: algebraic tail absent, density superexponentially small
        b = (alpha - 1.0) * (x / alpha) ** (alpha / (alpha - 1.0))
        bound = math.exp(-b + 0.5 * math.log1p(x) + 2.0) if b < 700.0 else 0.0
        if bound < 1e-30:
            return EvalResult(0.0, max(bound, 1e-300), "series")
        return None
    lnx = math.log(x)
    total = comp = 0.0
    prev = math.inf
    k = 1
    while k < 500:
        ln_t = math.lgamma(1.0 + alpha * k) - math.lgamma(k + 1.0) - (alpha * k + 1.0) * lnx
        mag = math.exp(ln_t) if ln_t > _LN_TINY else 0.0
        if mag > prev:  # divergence point of the asymptotic series
            break
        term = (mag if k % 2 else -mag) * math.sin(k * math.pi * (gamma + alpha) / 2.0)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        prev = mag
        if mag < 1e-17 * max(abs(total), 1e-300):
            break
        k += 1
    err = prev if k < 500 else math.inf
    if not math.isfinite(err) or err > 1e-13 * max(abs(total), 1e-250) + 1e-250:
        return None
    return EvalResult(total / math.pi, (err + 4.0 * _EPS * abs(total)) / math.pi, "series")


def _taylor_mp(alpha: float, phase: float, x: float) -> EvalResult:
    # cancellation depth from the largest term magnitude
    k_peak = max(1, int((x * alpha ** (-1.0 / alpha)) ** (alpha / (alpha - 1.0))))
    ln_peak = ((k_peak - 1) * math.log(x) + math.lgamma(1.0 + k_peak / alpha)
               - math.lgamma(k_peak + 1.0))
    dps = int(max(0.0, ln_peak) / math.log(10.0)) + 30
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        ph = mp.mpf(phase)
        xx = mp.mpf(x)
        total = mp.mpf(0)
        k = 1
        while k <= _MAX_TERMS_MP:
            term = (-xx) ** (k - 1) / mp.factorial(k) * mp.gamma(1 + mp.mpf(k) / a) * mp.sin(k * ph)
            total += term
            if k > 8 and abs(term) < mp.mpf(10) ** (-dps + 5) * max(abs(total), mp.mpf(1e-300)):
                break
            k += 1
        else:
            raise NonConvergent("stable mp series exhausted its term budget")
        val = float(total / mp.pi)
    # dps was chosen as digits(peak) + 30, leaving ~1e-25 absolute residue
    return EvalResult(val, abs(val) * 1e-13 + 1e-25, "series")


# ---------------------------------------------------------------------------
# alpha in (0, 1)

def _low_branch(alpha: float, gamma: float, x: float, rel_tol: float) -> EvalResult:
    if x <= 0.0:
        raise DomainError("series branch for alpha < 1 requires x > 0")
    val, err, ok = _inverse_double(alpha, gamma, x)
    if ok and err <= rel_tol * max(abs(val), 1e-300) + 1e-300:
        return EvalResult(val, err, "series")
    if abs(gamma - alpha) < 1e-12:
        # one-sided density: superexponentially small towards the origin
        b = (1.0 - alpha) * alpha ** (alpha / (1.0 - alpha)) * x ** (-alpha / (1.0 - alpha))
        bound = math.exp(-b + 2.0) if b < 700.0 else 0.0
        if bound < 1e-30:
            return EvalResult(0.0, max(bound, 1e-300), "series")
    return _inverse_mp(alpha, gamma, x)


def _inverse_double(alpha: float, gamma: float, x: float) -> tuple[float, float, bool]:
    lnx = math.log(x)
    total = comp = 0.0
    max_mag = 0.0
    r = 0
    while r <= _MAX_TERMS_DOUBLE:
        ln_t = (math.lgamma(alpha * (r + 1)) - math.lgamma(r + 1.0)
                - (alpha * (r + 1) + 1.0) * lnx)
        if ln_t > _LN_HUGE:
            return 0.0, math.inf, False
        mag = math.exp(ln_t) if ln_t > _LN_TINY else 0.0
        term = (mag if r % 2 == 0 else -mag) * math.sin(math.pi / 2.0 * (gamma + alpha) * (r + 1))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        max_mag = max(max_mag, mag)
        if r > 8 and mag < 1e-17 * max(abs(total), 1e-300):
            break
        r += 1
    else:
        return 0.0, math.inf, False
    return alpha * total / math.pi, alpha * (4.0 * _EPS * max_mag + mag) / math.pi, True


def _inverse_mp(alpha: float, gamma: float, x: float) -> EvalResult:
    lnx = math.log(x)
    r_peak_f = max(1.0, (alpha ** alpha / x ** alpha) ** (1.0 / (1.0 - alpha)))
    if r_peak_f > _MAX_TERMS_MP:
        raise NonConvergent("stable inverse series needs too many terms")
    r_peak = int(r_peak_f)
    ln_peak = (math.lgamma(alpha * (r_peak + 1)) - math.lgamma(r_peak + 1.0)
               - (alpha * (r_peak + 1) + 1.0) * lnx)
    dps = int(max(0.0, ln_peak) / math.log(10.0)) + 30
    with mp.workdps(dps):
        a, g, xx = mp.mpf(alpha), mp.mpf(gamma), mp.mpf(x)
        total = mp.mpf(0)
        r = 0
        while r <= _MAX_TERMS_MP:
            term = ((-1) ** r * mp.gamma(a * (r + 1)) / mp.factorial(r)
                    * xx ** (-a * (r + 1) - 1) * mp.sin(mp.pi / 2 * (g + a) * (r + 1)))
            total += term
            if r > 8 and abs(term) < mp.mpf(10) ** (-dps + 5) * max(abs(total), mp.mpf(1e-300)):
                break
            r += 1
        else:
            raise NonConvergent("stable mp inverse series exhausted its budget")
        val = float(a * total / mp.pi)
    return EvalResult(val, abs(val) * 1e-14 + 1e-300, "series")
