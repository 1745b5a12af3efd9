import logging
from typing import List, Optional

import attrs
import numpy as np

from gfclt import config
from gfclt.kernels.kernel import Kernel

logger = logging.getLogger(__name__)


@attrs.define
class SelfCheckReport:
    """Deviations from g(0, z) = 1 - z, g(0, 1) = 0 and g_z(0, 1) = -1"""

    kernel: str
    max_deviation: float = float("nan")
    root_deviation: float = float("nan")
    slope_deviation: float = float("nan")
    tolerance: float = config["kernel"]["self_check"]["tolerance"]
    errors: List[str] = attrs.Factory(list)

    @property
    def passed(self) -> bool:
        values = (self.max_deviation, self.root_deviation, self.slope_deviation)
        return not self.errors and all(np.isfinite(v) and v <= self.tolerance for v in values)

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel,
            "max_deviation": self.max_deviation,
            "root_deviation": self.root_deviation,
            "slope_deviation": self.slope_deviation,
            "tolerance": self.tolerance,
            "errors": list(self.errors),
            "passed": self.passed,
        }


def self_check_points() -> np.ndarray:
    settings = config["kernel"]["self_check"]
    radii = np.asarray(settings["radii"], dtype=float)
    angles = 2 * np.pi * np.arange(settings["angles"]) / settings["angles"]
    return (radii[:, None] * np.exp(1j * angles)[None, :]).reshape(-1)


def kernel_self_check(kernel: Kernel, tolerance: Optional[float] = None) -> SelfCheckReport:
    """Compare the kernel at x = 0 with 1 - z; failures are recorded, never raised"""
    report = SelfCheckReport(kernel=kernel.name)
    if tolerance is not None:
        report.tolerance = tolerance

    x0 = np.zeros(kernel.dim)
    z = self_check_points()
    try:
        values = np.asarray(kernel.evaluate(x0, z), dtype=complex)
        report.max_deviation = float(np.max(np.abs(values - (1.0 - z))))
    except Exception as e:
        report.errors.append(f"evaluate: {e}")

    try:
        report.root_deviation = float(abs(kernel.evaluate(x0, 1.0)))
        report.slope_deviation = float(abs(kernel.z_derivative(x0, 1.0) + 1.0))
    except Exception as e:
        report.errors.append(f"z = 1: {e}")

    if not report.passed:
        logger.warning(f"Kernel '{kernel.name}' failed its self check: {report.to_dict()}")
    return report
