import logging
from typing import Optional

import attrs
import numpy as np
import pandas as pd

from gfclt import config
from gfclt.analysis.singularity import track_root
from gfclt.enums import PhiMethod
from gfclt.exceptions import KernelDomainError, QuadratureDomainError, RootTrackingError
from gfclt.kernels import Kernel
from gfclt.kernels.kernel import ArrayLike
from gfclt.utils.quadrature import cauchy_derivatives, circle_nodes

logger = logging.getLogger(__name__)


@attrs.define(frozen=True, eq=False)
class PhiSequence:
    """phi_{Y_n}(x) for n = 0..n_max, recovered from the coefficients of 1 / g(x, .)"""

    x: np.ndarray
    values: np.ndarray
    method: PhiMethod
    radius: Optional[float] = None
    nodes: Optional[int] = None

    @property
    def n_max(self) -> int:
        return self.values.shape[0] - 1

    def bounded(self, slack: Optional[float] = None) -> bool:
        """Characteristic functions satisfy |phi| <= 1"""
        slack = config["coeffs"]["bound_slack"] if slack is None else slack
        return bool(np.all(np.abs(self.values) <= 1 + slack))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "n": np.arange(self.n_max + 1),
                "re": self.values.real,
                "im": self.values.imag,
                "method": self.method.value,
            }
        )


def phi_by_series(kernel: Kernel, x: ArrayLike, n_max: int) -> PhiSequence:
    x = kernel.check_x(x)
    values = kernel.f_series(x, n_max).coeffs[: n_max + 1]
    return PhiSequence(x=x, values=np.array(values), method=PhiMethod.series)


def phi_by_quadrature(
    kernel: Kernel, x: ArrayLike, n_max: int, r: Optional[float] = None, m_nodes: Optional[int] = None
) -> PhiSequence:
    """
    Trapezoidal rule for the Cauchy coefficient integral on |w| = r:
        phi_n = 1 / (m r^n) * sum_j f(x, r w_j) w_j^(-n),  w_j = exp(2 pi i j / m)
    which is one FFT of the node values. ``r`` defaults to a fixed fraction of |b(x)|.
    """
    settings = config["coeffs"]
    x = kernel.check_x(x)
    try:
        pole = abs(track_root(kernel, x).b)
    except (RootTrackingError, KernelDomainError) as e:
        logger.warning(f"No pole found at x = {x.tolist()}, quadrature radius falls back to a constant: {e}")
        pole = None

    if r is None:
        r = settings["default_radius"] if pole is None else settings["radius_factor"] * pole
    r = float(r)
    if r <= 0 or (pole is not None and r >= pole):
        raise QuadratureDomainError(f"Quadrature radius {r} must lie in (0, |b(x)|), |b(x)| = {pole}")
    if r > kernel.z_radius:
        raise QuadratureDomainError(f"Quadrature radius {r} exceeds the kernel's z_radius {kernel.z_radius}")

    m = max(settings["min_nodes"], settings["oversample"] * n_max) if m_nodes is None else int(m_nodes)
    if m <= n_max:
        raise QuadratureDomainError(f"Need more than {n_max} nodes, got {m}")

    g = np.asarray(kernel.evaluate(x, circle_nodes(0.0, r, m)), dtype=complex)
    if np.min(np.abs(g)) < settings["node_floor"]:
        raise QuadratureDomainError(f"g(x, .) vanishes on the circle |w| = {r}")

    taylor = np.fft.fft(1.0 / g)[: n_max + 1] / m
    values = taylor / r ** np.arange(n_max + 1)
    logger.debug(f"Quadrature at x = {x.tolist()}: r = {r:.6g}, {m} nodes")
    return PhiSequence(x=x, values=values, method=PhiMethod.quadrature, radius=r, nodes=m)


def cauchy_z_derivs(
    kernel: Kernel,
    x: ArrayLike,
    order: int,
    rho: Optional[float] = None,
    nodes: Optional[int] = None,
    z0: complex = 1.0,
) -> np.ndarray:
    """z-derivatives 0..order of g(x, .) at z0 by Cauchy's integral on |z - z0| = rho"""
    x = kernel.check_x(x)
    rho = kernel.cauchy_radius if rho is None else rho
    nodes = config["coeffs"]["cauchy_nodes"] if nodes is None else nodes
    if rho <= 0 or abs(z0) + rho > kernel.z_radius:
        raise KernelDomainError(f"Circle of radius {rho} around {z0} leaves the disc |z| <= {kernel.z_radius}")
    return cauchy_derivatives(lambda w: kernel.evaluate(x, w), z0, order, rho, nodes)


def kernel_dz(kernel: Kernel, x: ArrayLike, z: complex = 1.0) -> complex:
    """g_z(x, z); analytic for kernels that supply partials, Cauchy differentiation otherwise"""
    return kernel.z_derivative(kernel.check_x(x), z)
