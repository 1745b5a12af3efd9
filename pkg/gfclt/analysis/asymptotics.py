import logging
import math
from typing import Optional, Sequence

import attrs
import numpy as np
from scipy.stats import linregress

from gfclt import config
from gfclt.analysis.coeffs import PhiSequence, phi_by_quadrature, phi_by_series
from gfclt.analysis.limits import LimitParams
from gfclt.analysis.singularity import Singularity, principal_part_phi, track_root
from gfclt.exceptions import SeriesOrderError, SeriesUnavailableError
from gfclt.kernels import Kernel
from gfclt.kernels.kernel import ArrayLike

logger = logging.getLogger(__name__)


@attrs.define(frozen=True, eq=False)
class DecayFitReport:
    """Fit of log e_n against n for e_n = |phi_{Y_n}(x) - a b^(-n)|; r_fit = exp(-slope)"""

    singularity: Singularity
    ns: np.ndarray
    errors: np.ndarray
    slope: float
    r_fit: float
    window: tuple

    @property
    def passed(self) -> bool:
        return bool(self.slope < 0 and self.r_fit > 1)

    def to_dict(self) -> dict:
        report = self.singularity.to_dict()
        report.update(slope=self.slope, r_fit=self.r_fit, window=list(self.window), passed=self.passed)
        return report


def _exact_phi(kernel: Kernel, x: np.ndarray, n_max: int) -> PhiSequence:
    try:
        return phi_by_series(kernel, x, n_max)
    except (SeriesUnavailableError, SeriesOrderError) as e:
        logger.info(f"Falling back to quadrature for exact coefficients: {e}")
        return phi_by_quadrature(kernel, x, n_max)


def principal_errors(kernel: Kernel, x: ArrayLike, n_max: int):
    x = kernel.check_x(x)
    singularity = track_root(kernel, x)
    phi = _exact_phi(kernel, x, n_max).values
    principal = np.array([principal_part_phi(singularity, n) for n in range(n_max + 1)])
    return singularity, np.abs(phi - principal)


def decay_rate_check(kernel: Kernel, x: ArrayLike, n_max: Optional[int] = None) -> DecayFitReport:
    """
    Exponential decay of the non-principal remainder. Points at the rounding floor are dropped; with too few
    points left in the tail window the fit widens to n >= 1, and a remainder that is rounding noise throughout
    is reported as a pure pole (slope -inf).
    """
    settings = config["singularity"]["decay"]
    n_max = settings["n_max"] if n_max is None else n_max
    singularity, errors = principal_errors(kernel, x, n_max)
    ns = np.arange(n_max + 1)

    window = (min(settings["n_min"], n_max), n_max)
    keep = (ns >= window[0]) & (errors > settings["floor"])
    if keep.sum() < settings["min_points"]:
        window = (1, n_max)
        keep = (ns >= 1) & (errors > settings["floor"])

    if keep.sum() < settings["min_points"]:
        slope, r_fit = -math.inf, math.inf
    else:
        slope = float(linregress(ns[keep], np.log(errors[keep])).slope)
        r_fit = math.exp(-slope)

    logger.debug(f"Decay fit at x = {singularity.x.tolist()}: slope = {slope}, window = {window}")
    return DecayFitReport(singularity=singularity, ns=ns, errors=errors, slope=slope, r_fit=r_fit, window=window)


@attrs.define(frozen=True, eq=False)
class LevyReport:
    """|phi_{Z_n}(omega) - exp(-1/2 <omega, Sigma omega>)| for Z_n = (Y_n - mu n) / sqrt(n)"""

    omega: np.ndarray
    ns: np.ndarray
    deviations: np.ndarray

    @property
    def shrinking(self) -> bool:
        return bool(self.deviations[-1] < self.deviations[0])

    def to_dict(self) -> dict:
        return {
            "omega": self.omega.tolist(),
            "ns": self.ns.tolist(),
            "deviations": self.deviations.tolist(),
            "shrinking": self.shrinking,
        }


def levy_check(
    kernel: Kernel, lp: LimitParams, omega: Optional[ArrayLike] = None, ns: Sequence[int] = (10, 100, 1000, 10000)
) -> LevyReport:
    """Characteristic function of the normalized statistic through the principal part, against the Gaussian"""
    omega = np.ones(kernel.dim) if omega is None else np.asarray(omega, dtype=float).reshape(-1)
    target = math.exp(-0.5 * float(omega @ lp.sigma @ omega))

    deviations = []
    for n in ns:
        root_n = math.sqrt(n)
        singularity = track_root(kernel, omega / root_n)
        phi = principal_part_phi(singularity, n) * np.exp(-1j * float(lp.mu @ omega) * root_n)
        deviations.append(abs(phi - target))
    return LevyReport(omega=omega, ns=np.asarray(ns), deviations=np.asarray(deviations))
