import math
import warnings
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import norm

from gfclt.permlab.table import DistTable


def ks_to_normal(table: DistTable, mu: float, sigma2: float) -> float:
    """
    Kolmogorov-Smirnov distance between the law of (V - mu n) / sqrt(n) in ``table`` and N(0, sigma2).
    The empirical CDF is a step function, so the supremum is attained on one side of a jump point.
    """
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be positive, got {sigma2}")
    if len(table.counts) < 2:
        warnings.warn(f"Table at n = {table.n} has a single atom; KS statistic set to 1")
        return 1.0

    n = max(table.n, 1)
    u = (table.values - mu * n) / math.sqrt(n)
    reference = norm(0.0, math.sqrt(sigma2)).cdf(u)

    after = np.cumsum(table.weights) / table.total
    before = after - table.weights / table.total
    return float(max(np.max(np.abs(after - reference)), np.max(np.abs(before - reference))))


def ks_trend(values: Sequence[float]) -> Tuple[bool, bool]:
    """(last <= first, every step nonincreasing) for KS statistics ordered by increasing n"""
    values = list(values)
    if not values:
        raise ValueError("Need at least one KS statistic")
    endpoints = values[-1] <= values[0]
    stepwise = all(b <= a for a, b in zip(values, values[1:]))
    return endpoints, stepwise
