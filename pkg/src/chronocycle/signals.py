"""Synthetic test signals."""

from __future__ import annotations

import numpy as np

from .embedding import TimeSeries


def noisy_sine(
    n: int = 1000,
    t_end: float = 12 * np.pi,
    sigma: float = 0.1,
    seed: int = 0,
) -> TimeSeries:
    """sin t plus Gaussian noise of standard deviation sigma."""
    if n < 2:
        raise ValueError("need at least 2 samples")
    t = np.linspace(0.0, t_end, n)
    rng = np.random.default_rng(seed)
    values = np.sin(t) + sigma * rng.standard_normal(n)
    return TimeSeries(t0=0.0, dt=float(t[1] - t[0]), values=values)


def double_sine(n: int = 1000, t_end: float = 60 * np.pi) -> TimeSeries:
    """2 sin t + 1.8 sin(sqrt(3) t): two rationally independent tones."""
    if n < 2:
        raise ValueError("need at least 2 samples")
    t = np.linspace(0.0, t_end, n)
    values = 2.0 * np.sin(t) + 1.8 * np.sin(np.sqrt(3.0) * t)
    return TimeSeries(t0=0.0, dt=float(t[1] - t[0]), values=values)
