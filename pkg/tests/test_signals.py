import math

import numpy as np
import pytest

from chronocycle.signals import double_sine, noisy_sine


def test_noisy_sine_deterministic():
    a = noisy_sine(n=100, seed=42)
    b = noisy_sine(n=100, seed=42)
    assert np.array_equal(a.values, b.values)
    c = noisy_sine(n=100, seed=43)
    assert not np.array_equal(a.values, c.values)


def test_noisy_sine_no_noise():
    ts = noisy_sine(n=200, t_end=4 * math.pi, sigma=0.0)
    t = np.linspace(0.0, 4 * math.pi, 200)
    assert np.allclose(ts.values, np.sin(t), atol=1e-15)
    assert ts.t0 == 0.0
    assert ts.dt == pytest.approx(4 * math.pi / 199)


def test_noisy_sine_noise_scale():
    ts = noisy_sine(n=5000, sigma=0.1, seed=7)
    t = ts.times()
    resid = ts.values - np.sin(t)
    assert abs(resid.std() - 0.1) < 0.01


def test_double_sine_formula():
    ts = double_sine(n=300)
    t = ts.times()
    expect = 2.0 * np.sin(t) + 1.8 * np.sin(math.sqrt(3.0) * t)
    assert np.allclose(ts.values, expect, atol=1e-12)
    assert ts.t_end == pytest.approx(60 * math.pi)


def test_too_short():
    with pytest.raises(ValueError):
        noisy_sine(n=1)
    with pytest.raises(ValueError):
        double_sine(n=0)
