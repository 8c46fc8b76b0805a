import itertools
import math

import mpmath
import numpy as np
import pytest

from ghz_noise.noise import (
    PowerLawParams,
    beta_closed,
    beta_quadrature,
    char_fn,
    kernel,
    sample_phase,
    sample_phases,
)

GRID = list(itertools.product([1e-4, 1e-2, 1e-1], [3.0, 5.0, 10.0, 20.0], [0.1, 1.0, 10.0, 50.0]))


def beta_mp(tau, g, alpha):
    """High-precision evaluation of the closed form."""
    with mpmath.workdps(60):
        g, a, tau = mpmath.mpf(g), mpmath.mpf(alpha), mpmath.mpf(tau)
        x = g * tau
        return float((x * (a - 2) - 1 + (1 + x) ** (2 - a)) / ((a - 2) * g))


@pytest.mark.parametrize("kwargs", [dict(g=0.0), dict(g=-1.0), dict(alpha=1.0), dict(alpha=2.0), dict(alpha=2 + 1e-10)])
def test_params_reject_invalid(kwargs):
    with pytest.raises(ValueError):
        PowerLawParams(**kwargs)


def test_kernel_values():
    p = PowerLawParams(0.01, 3.0)
    assert kernel(0.0, p) == pytest.approx(0.01)
    assert kernel(1e12, p) < 1e-20
    values = [kernel(dt, p) for dt in np.linspace(0, 100, 501)]
    assert all(b <= a for a, b in zip(values, values[1:]))
    with pytest.raises(ValueError):
        kernel(-1.0, p)


def test_kernel_double_integral_reproduces_closed_form():
    # direct 2D integral of K(|s - s'|) over the square, not the reduced form
    p = PowerLawParams(0.1, 5.0)
    tau = 3.0
    # split the inner integral at the kink s' = s
    inner = lambda s: mpmath.quad(lambda sp: kernel(abs(s - sp), p), [0, s, tau])  # noqa: E731
    double = mpmath.quad(inner, [0, tau])
    assert float(double) == pytest.approx(beta_closed(tau, p), rel=1e-8)


def test_beta_closed_examples():
    p = PowerLawParams(0.01, 3.0)
    assert beta_closed(0.0, p) == 0.0
    assert beta_closed(10.0, p) == pytest.approx((0.1 - 1 + 1 / 1.1) / 0.01, rel=1e-14)
    assert beta_closed(10.0, p) == pytest.approx(0.909090909090909, rel=1e-13)
    assert beta_closed(1e-3, p) == pytest.approx((3 - 1) * 0.01 * 1e-6 / 2, rel=1e-6)


@pytest.mark.parametrize("g, alpha, tau", GRID + [(1.0, 2.5, 1e-3), (1e-2, 1.5, 7.0), (2.0, 100.0, 0.5)])
def test_beta_closed_matches_high_precision(g, alpha, tau):
    assert beta_closed(tau, PowerLawParams(g, alpha)) == pytest.approx(beta_mp(tau, g, alpha), rel=1e-13)


@pytest.mark.parametrize("g, alpha, tau", GRID)
def test_beta_quadrature_oracle(g, alpha, tau):
    p = PowerLawParams(g, alpha)
    assert abs(beta_quadrature(tau, p) - beta_closed(tau, p)) / beta_closed(tau, p) < 1e-8


def test_beta_quadrature_zero():
    assert beta_quadrature(0.0, PowerLawParams()) == 0.0


def test_beta_rejects_negative_tau():
    with pytest.raises(ValueError):
        beta_closed(-1.0, PowerLawParams())


@pytest.mark.parametrize("g, alpha", [(1e-4, 3.0), (1e-2, 5.0), (1e-1, 20.0), (1.0, 2.5)])
def test_beta_nonnegative_increasing(g, alpha):
    p = PowerLawParams(g, alpha)
    taus = np.linspace(0, 100, 401)
    values = np.array([beta_closed(t, p) for t in taus])
    assert values[0] == 0 and np.all(values >= 0)
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize("g, alpha", [(1e-2, 3.0), (1e-1, 5.0), (1.0, 10.0)])
def test_beta_long_time_slope(g, alpha):
    p = PowerLawParams(g, alpha)
    h = 1e-2
    slope = (beta_closed(1e4 + h, p) - beta_closed(1e4 - h, p)) / (2 * h)
    exact = 1 - (1 + g * 1e4) ** (1 - alpha)
    assert slope == pytest.approx(exact, abs=1e-6)
    assert abs(slope - 1) < 1e-2


def test_char_fn():
    assert char_fn(4, 0.0) == 1.0
    assert char_fn(2, 0.5) == pytest.approx(math.exp(-1), rel=1e-15)
    assert char_fn(0, 12.3) == 1.0
    for n, beta in itertools.product(range(-6, 7), [0.0, 0.1, 1.0, 5.0]):
        assert char_fn(n, beta) == char_fn(-n, beta)
        assert 0 < char_fn(n, beta) <= 1
        assert char_fn(abs(n) + 1, beta) <= char_fn(n, beta)
        assert char_fn(n, beta + 0.1) <= char_fn(n, beta)


def test_sample_phase_degenerate():
    rng = np.random.default_rng(1)
    assert sample_phase(0.0, rng) == 0.0
    assert np.all(sample_phases(0.0, rng, 100) == 0)
    with pytest.raises(ValueError):
        sample_phases(-1.0, rng, 3)


def test_sample_phase_statistics():
    n = 10**6
    rng = np.random.default_rng(7)
    z = sample_phases(1.0, rng, n)
    assert abs(z.mean()) < 4 / math.sqrt(n)
    assert 0.994 <= np.mean(z**2) <= 1.006
    phi = sample_phases(0.3, np.random.default_rng(8), n)
    assert np.mean(np.cos(2 * phi)) == pytest.approx(math.exp(-0.6), abs=4e-3)


def test_sample_phase_reproducible():
    a = sample_phases(0.7, np.random.default_rng(3), 11)
    b = sample_phases(0.7, np.random.default_rng(3), 11)
    assert np.array_equal(a, b)
    assert isinstance(sample_phase(0.7, np.random.default_rng(3)), float)
