"""Power-law Gaussian noise: autocorrelation kernel, phase variance and phase sampling.

All quantities are dimensionless: ``g = l / omega`` and ``tau = omega * t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ALPHA_SINGULAR_TOL = 1e-9
SIMPSON_TOL = 1e-10
SIMPSON_MAX_DEPTH = 40


@dataclass(frozen=True)
class PowerLawParams:
    """Noise parameters. ``alpha = 2`` is excluded: the phase variance is singular there."""

    g: float = 1e-2
    alpha: float = 3.0

    def __post_init__(self):
        if not (self.g > 0 and math.isfinite(self.g)):
            raise ValueError(f"g must be a positive finite number, got {self.g!r}")
        if not (self.alpha > 1 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be a finite number > 1, got {self.alpha!r}")
        if abs(self.alpha - 2.0) <= ALPHA_SINGULAR_TOL:
            raise ValueError("alpha = 2 is not allowed: the phase variance is undefined there")


def kernel(dt: float, params: PowerLawParams) -> float:
    """Autocorrelation ``g (alpha-1)/2 * (1 + g dt)^(-alpha)`` at separation ``dt >= 0``."""
    if dt < 0:
        raise ValueError(f"dt must be >= 0, got {dt}")
    g, a = params.g, params.alpha
    return 0.5 * g * (a - 1.0) * (1.0 + g * dt) ** (-a)


def _check_tau(tau: float) -> None:
    if tau < 0 or not math.isfinite(tau):
        raise ValueError(f"tau must be a finite number >= 0, got {tau}")


def beta_closed(tau: float, params: PowerLawParams) -> float:
    """Variance of the accumulated noise phase at time ``tau`` (closed form)."""
    _check_tau(tau)
    g, a = params.g, params.alpha
    x = g * tau
    if x == 0.0:
        return 0.0
    if x * (abs(a) + 2.0) < 0.1:
        # binomial series of (1+x)^(2-a) from k=2; the k<2 terms cancel exactly
        term = 0.5 * (2.0 - a) * (1.0 - a) * x * x
        total = term
        k = 2
        while abs(term) > 1e-17 * abs(total) and k < 200:
            term *= (2.0 - a - k) * x / (k + 1)
            total += term
            k += 1
        return total / ((a - 2.0) * g)
    return (x * (a - 2.0) + math.expm1((2.0 - a) * math.log1p(x))) / ((a - 2.0) * g)


def _adaptive_simpson(f, lo, hi, tol, max_depth):
    def simpson(a, fa, b, fb):
        m = 0.5 * (a + b)
        fm = f(m)
        return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, fa, b, fb, m, fm, whole, eps, depth):
        lm, flm, left = simpson(a, fa, m, fm)
        rm, frm, right = simpson(m, fm, b, fb)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        return recurse(a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) + recurse(
            m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1
        )

    fa, fb = f(lo), f(hi)
    m, fm, whole = simpson(lo, fa, hi, fb)
    return recurse(lo, fa, hi, fb, m, fm, whole, tol, max_depth)


def beta_quadrature(tau: float, params: PowerLawParams, tol: float = SIMPSON_TOL) -> float:
    """Phase variance from the double kernel integral, reduced to ``2 int_0^tau (tau - s) K(s) ds``.

    Evaluated with adaptive Simpson; independent of :func:`beta_closed`.
    """
    _check_tau(tau)
    if tau == 0:
        return 0.0
    # scale the absolute tolerance down for tiny integrals so relative accuracy holds
    scale = 2.0 * tau * tau * kernel(0.0, params)
    eps = min(tol, 1e-12 * scale)
    integral = _adaptive_simpson(lambda s: (tau - s) * kernel(s, params), 0.0, tau, eps, SIMPSON_MAX_DEPTH)
    return 2.0 * integral


def char_fn(n: int, beta: float) -> float:
    """Zero-mean Gaussian characteristic function ``<exp(i n phi)> = exp(-n^2 beta / 2)``."""
    return math.exp(-0.5 * n * n * beta)


def _box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    pairs = (size + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # (0, 1], keeps log finite
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:size]


def sample_phases(beta: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """``size`` draws of a zero-mean Gaussian phase with variance ``beta`` (Box-Muller)."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if beta == 0:
        return np.zeros(size)
    return math.sqrt(beta) * _box_muller(rng, size)


def sample_phase(beta: float, rng: np.random.Generator) -> float:
    return float(sample_phases(beta, rng, 1)[0])
