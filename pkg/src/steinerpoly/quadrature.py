"""Shared numerical kernels.

Everything the geometric modules need from analysis lives here: an
in-repo error function (so results do not depend on the platform libm),
composite Gauss-Legendre panels, the semi-infinite Gaussian-weighted
integrals that external-angle formulas reduce to, and plain bisection.

All kernels are pure functions of their inputs; repeated calls with the
same arguments return bitwise-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

SQRT_PI = math.sqrt(math.pi)

# erf evaluation: Maclaurin-type series below the split, Laplace continued
# fraction for erfc above it.  The fixed continued-fraction depth keeps the
# result deterministic; 150 levels are converged to < 1 ulp for x >= 1.25.
_ERF_SPLIT = 1.25
_ERF_CF_DEPTH = 150
_ERF_SERIES_TERMS = 48
_ERF_SATURATION = 6.5  # erfc(6.5) ~ 3e-20, below double resolution of 1

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)

# Truncation point of the semi-infinite integrals: exp(-a x*^2) = 1e-18.
_TAIL_LOG = math.log(1e18)

_MAX_PANELS = 4096


class QuadratureError(RuntimeError):
    """Panel refinement exhausted without meeting the tolerance."""


def erf(x: float) -> float:
    """Error function, accurate to ~3e-16 absolute on [-6.5, 6.5]."""
    if x < 0.0:
        return -erf(-x)
    if x >= _ERF_SATURATION:
        return 1.0
    if x < _ERF_SPLIT:
        return _erf_series(x)
    return 1.0 - _erfc_cf(x)


def _erf_series(x: float) -> float:
    # erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (1*3*...*(2k+1)).
    # All terms are positive, so there is no cancellation; Kahan
    # compensation keeps the accumulated rounding below an ulp.
    if x == 0.0:
        return 0.0
    term = x
    total = x
    comp = 0.0
    for k in range(1, _ERF_SERIES_TERMS):
        term *= 2.0 * x * x / (2 * k + 1)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if term <= 1e-20 * total:
            break
    return 2.0 / SQRT_PI * math.exp(-x * x) * total


def _erfc_cf(x: float) -> float:
    # Laplace continued fraction, evaluated bottom-up at fixed depth.
    f = 0.0
    for k in range(_ERF_CF_DEPTH, 0, -1):
        f = (0.5 * k) / (x + f)
    return math.exp(-x * x) / SQRT_PI / (x + f)


def erf_array(x: np.ndarray) -> np.ndarray:
    """Vectorised erf; elementwise identical to :func:`erf`."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    neg = x < 0.0
    ax = np.abs(x)

    sat = ax >= _ERF_SATURATION
    out[sat] = 1.0

    small = (ax < _ERF_SPLIT) & ~sat
    if small.any():
        xs = ax[small]
        term = xs.copy()
        total = xs.copy()
        comp = np.zeros_like(xs)
        for k in range(1, _ERF_SERIES_TERMS):
            term = term * (2.0 * xs * xs / (2 * k + 1))
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
        out[small] = 2.0 / SQRT_PI * np.exp(-xs * xs) * total

    big = ~small & ~sat
    if big.any():
        xb = ax[big]
        f = np.zeros_like(xb)
        for k in range(_ERF_CF_DEPTH, 0, -1):
            f = (0.5 * k) / (xb + f)
        out[big] = 1.0 - np.exp(-xb * xb) / SQRT_PI / (xb + f)

    out[neg] = -out[neg]
    return out


@dataclass(frozen=True)
class IntegrandSpec:
    """Integrand e^{-a x^2} * prod_j (lam_j sqrt(pi)/2) erf(x/lam_j).

    ``a`` is the Gaussian rate (a sum of 1/lambda^2 terms in the geometric
    applications) and ``factors`` the lambda values of the erf terms.
    """

    a: float
    factors: tuple[float, ...] = ()
    prefactor: float = 1.0

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError(f"Gaussian rate must be positive, got {self.a}")
        if any(f <= 0.0 for f in self.factors):
            raise ValueError(f"erf factors must be positive, got {self.factors}")


def _composite_gl(values: Callable[[np.ndarray], np.ndarray], upper: float,
                  panels: int) -> float:
    """64-point Gauss-Legendre on [0, upper] split into equal panels."""
    h = upper / panels
    total = 0.0
    for i in range(panels):
        x = (i + 0.5 * (_GL_NODES + 1.0)) * h
        total += float(np.dot(_GL_WEIGHTS, values(x))) * (0.5 * h)
    return total


def integrate_gaussian_erf(spec: IntegrandSpec, rel_tol: float = 1e-10) -> float:
    """Integrate ``spec`` over [0, inf) by panel-doubled Gauss-Legendre.

    The integrand decays like exp(-a x^2); integration is truncated where
    that factor reaches 1e-18 and panels are doubled until two successive
    estimates agree to ``rel_tol`` relatively.
    """
    if rel_tol < 1e-12:
        raise ValueError("rel_tol below 1e-12 is not supported in double precision")
    upper = math.sqrt(_TAIL_LOG / spec.a)

    # group identical erf factors so each distinct lambda costs one erf pass
    groups: dict[float, int] = {}
    for lam in spec.factors:
        groups[lam] = groups.get(lam, 0) + 1

    def values(x: np.ndarray) -> np.ndarray:
        v = np.exp(-spec.a * x * x)
        for lam, count in groups.items():
            v = v * (lam * SQRT_PI / 2.0 * erf_array(x / lam)) ** count
        return v

    prev = _composite_gl(values, upper, 1)
    panels = 2
    while panels <= _MAX_PANELS:
        cur = _composite_gl(values, upper, panels)
        if abs(cur - prev) <= rel_tol * abs(cur):
            return spec.prefactor * cur
        prev = cur
        panels *= 2
    raise QuadratureError(
        f"integral of {spec} did not converge to rel_tol={rel_tol} "
        f"within {_MAX_PANELS} panels")


def solve_scalar(f: Callable[[float], float], lo: float, hi: float,
                 tol: float = 1e-14) -> float:
    """Bisection root of a sign-changing scalar function on [lo, hi].

    Derivative-free and unconditionally convergent; returns the interval
    midpoint once the bracket is shorter than ``tol``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket at float resolution
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return 0.5 * (lo + hi)
