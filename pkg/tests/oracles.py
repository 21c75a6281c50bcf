"""Independent oracles used by the test suite.

These deliberately avoid the library's own code paths: the HDI oracle is an
exhaustive grid search over scipy's incomplete beta, the regression oracle
solves the raw normal equations with numpy's linear solver, and the entropy
oracle is direct summation over known probabilities.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special as sp


def grid_hdi(a: float, b: float, mass: float = 0.95, n_grid: int = 100_001):
    """Exhaustive grid search minimizing interval width subject to mass.

    Scans every grid value of the lower endpoint; the matching upper
    endpoint is interpolated from a dense CDF table so the width function
    is smooth rather than grid-quantized.
    """
    xs = np.linspace(0.0, 1.0, n_grid)
    cdf = sp.betainc(a, b, xs)
    targets = cdf + mass
    ok = targets <= 1.0
    uppers = np.interp(targets[ok], cdf, xs)
    widths = uppers - xs[ok]
    k = int(np.argmin(widths))
    return float(xs[ok][k]), float(uppers[k])


def grid_equal_tailed(a: float, b: float, mass: float = 0.95, n_grid: int = 400_001):
    """Equal-tailed interval by inverse interpolation of a dense CDF table."""
    xs = np.linspace(0.0, 1.0, n_grid)
    cdf = sp.betainc(a, b, xs)
    half_tail = (1.0 - mass) / 2.0
    return (
        float(np.interp(half_tail, cdf, xs)),
        float(np.interp(half_tail + mass, cdf, xs)),
    )


def normal_equations_fit(ts, us) -> tuple[float, float]:
    """Closed-form OLS via the raw 2x2 normal equations, solved by numpy."""
    t = np.asarray(ts, dtype=float)
    u = np.asarray(us, dtype=float)
    n = len(t)
    lhs = np.array([[n, t.sum()], [t.sum(), (t * t).sum()]])
    rhs = np.array([u.sum(), (t * u).sum()])
    beta0, beta1 = np.linalg.solve(lhs, rhs)
    return float(beta0), float(beta1)


def entropy_bits_direct(probs) -> float:
    """Direct -sum(p log2 p) over known probabilities."""
    return -sum(p * math.log2(p) for p in probs if p > 0.0)
