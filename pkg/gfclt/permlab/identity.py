import logging
import math
from typing import List, Optional

import attrs
import numpy as np
import pandas as pd

from gfclt import config
from gfclt.exceptions import EnumerationLimitError
from gfclt.kernels import defant_series
from gfclt.permlab.sampling import exact_distribution
from gfclt.series import ps_log1p

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-9


@attrs.define(frozen=True)
class IdentityRow:
    n: int
    discrepancy: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.discrepancy < self.tolerance


@attrs.define(frozen=True)
class IdentityReport:
    """Per n, max_m |n! [y^m z^n] (-log(1 + F^)) - #{pi in S_(n-1) : des(s(pi)) + 1 = m}|"""

    rows: List[IdentityRow]

    @property
    def max_discrepancy(self) -> float:
        return max(row.discrepancy for row in self.rows)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_dict(self) -> dict:
        return {
            "rows": [attrs.asdict(row) | {"passed": row.passed} for row in self.rows],
            "max_discrepancy": self.max_discrepancy,
            "passed": self.passed,
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([attrs.asdict(row) | {"passed": row.passed} for row in self.rows])


def verify_descent_identity(n_max: int = 9, trunc: Optional[int] = None, progress: bool = False) -> IdentityReport:
    """Compare the z^n / n! coefficients of -log(1 + F^(y, z)) with exhaustive counts over S_(n-1), 1 <= n <= n_max"""
    limit = config["permlab"]["exact_max_n"]
    if n_max > limit + 1:
        raise EnumerationLimitError(f"The identity check enumerates S_(n_max - 1); n_max must be <= {limit + 1}")

    trunc = max(n_max, config["kernel"]["defant"]["min_trunc"]) if trunc is None else trunc
    log_series = -ps_log1p(defant_series(trunc).f_hat)

    rows = []
    for n in range(1, n_max + 1):
        scale = math.factorial(n)
        from_series = log_series.coeffs[:, n] * scale
        exact = np.zeros(from_series.shape[0])
        for value, count in exact_distribution(n - 1, progress=progress).counts.items():
            exact[value] = count
        discrepancy = float(np.max(np.abs(from_series - exact)))
        rows.append(IdentityRow(n=n, discrepancy=discrepancy, tolerance=RELATIVE_TOLERANCE * scale))
        logger.debug(f"Descent identity at n = {n}: discrepancy {discrepancy:.3g}")
    return IdentityReport(rows=rows)
