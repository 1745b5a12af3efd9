"""
Limit parameters of Y_n / n from a kernel g(x, z):
    mu_j      = i g_{x_j}(0, 1)
    Sigma_jk  = g_{x_j x_k}(0, 1) - i (mu_j g_{x_k z}(0, 1) + mu_k g_{x_j z}(0, 1)) + mu_j mu_k
Both are real for a genuine kernel; the imaginary parts that are dropped are reported as ``imag_residue``.
"""
import itertools
import logging
from typing import Dict, Iterable, Optional, Tuple

import attrs
import numpy as np

from gfclt import config
from gfclt.enums import DerivMode
from gfclt.exceptions import StencilError
from gfclt.kernels import Kernel, KernelJet
from gfclt.utils.quadrature import cauchy_derivatives

logger = logging.getLogger(__name__)

# ((x indices...), z order), e.g. ((0,), 1) is g_{x_0 z}
PartialOrder = Tuple[Tuple[int, ...], int]


@attrs.define(frozen=True, eq=False)
class LimitParams:
    """Drift ``mu`` (d,) and covariance ``sigma`` (d, d) per step, with realness and PSD diagnostics"""

    mu: np.ndarray
    sigma: np.ndarray
    imag_residue: float
    psd_slack: float
    deriv_mode: DerivMode = DerivMode.analytic

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    def passed(self, tolerance: Optional[float] = None) -> bool:
        tolerance = config["limits"]["imag_tolerance"] if tolerance is None else tolerance
        return self.imag_residue < tolerance and self.psd_slack > -config["limits"]["psd_clamp"]

    def to_dict(self) -> dict:
        return {
            "mu": self.mu.tolist(),
            "sigma": self.sigma.tolist(),
            "imag_residue": self.imag_residue,
            "psd_slack": self.psd_slack,
        }


def _stencil_step(kernel: Kernel, x: np.ndarray, step: Optional[float]) -> float:
    h = config["limits"]["fd_step"] * max(1.0, kernel.x_box) if step is None else step
    reach = np.max(np.abs(x), initial=0.0) + 2 * h
    if reach > kernel.x_box:
        raise StencilError(f"Finite difference stencil reaches |x| = {reach:.3g} beyond x_box = {kernel.x_box}")
    return h


def _z_partial(kernel: Kernel, x: np.ndarray, z0: complex, z_order: int) -> complex:
    if z_order == 0:
        return complex(kernel.evaluate(x, z0))
    nodes = config["coeffs"]["cauchy_nodes"]
    derivs = cauchy_derivatives(lambda w: kernel.evaluate(x, w), z0, z_order, kernel.cauchy_radius, nodes)
    return complex(derivs[z_order])


def _central(func, x: np.ndarray, index: Tuple[int, ...], h: float) -> complex:
    unit = np.eye(x.shape[0])
    if len(index) == 0:
        return func(x)
    if len(index) == 1:
        e = unit[index[0]] * h
        return (func(x + e) - func(x - e)) / (2 * h)
    if len(index) == 2:
        j, k = index
        if j == k:
            e = unit[j] * h
            return (func(x + e) - 2 * func(x) + func(x - e)) / h**2
        ej, ek = unit[j] * h, unit[k] * h
        return (func(x + ej + ek) - func(x + ej - ek) - func(x - ej + ek) + func(x - ej - ek)) / (4 * h**2)
    raise ValueError(f"Only x-orders up to 2 are supported, got {index}")


def finite_diff_partials(
    kernel: Kernel,
    orders: Iterable[PartialOrder],
    x: Optional[np.ndarray] = None,
    z0: complex = 1.0,
    step: Optional[float] = None,
) -> Dict[PartialOrder, complex]:
    """
    Partial derivatives of g at (x, z0) by central differences in x (steps h and h / 2, one Richardson level)
    and Cauchy differentiation in z
    """
    x = np.zeros(kernel.dim) if x is None else kernel.check_x(x)
    h = _stencil_step(kernel, x, step)

    out = {}
    for index, z_order in orders:
        index = tuple(index)
        func = lambda point: _z_partial(kernel, point, z0, z_order)  # noqa: E731
        if not index:
            out[(index, z_order)] = func(x)
            continue
        coarse, fine = _central(func, x, index, h), _central(func, x, index, h / 2)
        out[(index, z_order)] = (4 * fine - coarse) / 3
    return out


def finite_difference_jet(
    kernel: Kernel, x: Optional[np.ndarray] = None, z0: complex = 1.0, step: Optional[float] = None
) -> KernelJet:
    d = kernel.dim
    pairs = list(itertools.combinations_with_replacement(range(d), 2))
    orders = [((), 0), ((), 1)] + [((j,), 0) for j in range(d)] + [((j,), 1) for j in range(d)]
    orders += [(pair, 0) for pair in pairs]
    partials = finite_diff_partials(kernel, orders, x=x, z0=z0, step=step)

    dxx = np.zeros((d, d), dtype=complex)
    for j, k in pairs:
        dxx[j, k] = dxx[k, j] = partials[((j, k), 0)]
    return KernelJet(
        value=partials[((), 0)],
        dz=partials[((), 1)],
        dx=np.array([partials[((j,), 0)] for j in range(d)]),
        dxx=dxx,
        dxz=np.array([partials[((j,), 1)] for j in range(d)]),
    )


def _clamp_psd(sigma: np.ndarray) -> Tuple[np.ndarray, float]:
    threshold = config["limits"]["psd_clamp"]
    eigenvalues, vectors = np.linalg.eigh(sigma)
    slack = float(eigenvalues.min())

    if slack < -threshold:
        logger.warning(f"Sigma has eigenvalue {slack:.3g} below -{threshold:g}; left unclamped")
    negative = (eigenvalues < 0) & (eigenvalues >= -threshold)
    if not negative.any():
        return sigma, slack

    eigenvalues = np.where(negative, 0.0, eigenvalues)
    clamped = (vectors * eigenvalues) @ vectors.T
    return (clamped + clamped.T) / 2, slack


def compute_limits(kernel: Kernel, deriv_mode: Optional[DerivMode] = None) -> LimitParams:
    deriv_mode = kernel.deriv_mode if deriv_mode is None else deriv_mode
    x0 = np.zeros(kernel.dim)
    if deriv_mode is DerivMode.analytic:
        jet = kernel.jet(x0, 1.0)
    else:
        jet = finite_difference_jet(kernel, x0)

    mu_c = 1j * np.asarray(jet.dx, dtype=complex)
    mu = mu_c.real
    gxz = np.asarray(jet.dxz, dtype=complex)
    sigma_c = np.asarray(jet.dxx, dtype=complex) - 1j * (np.outer(mu, gxz) + np.outer(gxz, mu)) + np.outer(mu, mu)

    imag_residue = float(max(np.max(np.abs(mu_c.imag)), np.max(np.abs(sigma_c.imag))))
    sigma = sigma_c.real
    sigma, psd_slack = _clamp_psd((sigma + sigma.T) / 2)

    params = LimitParams(mu=mu, sigma=sigma, imag_residue=imag_residue, psd_slack=psd_slack, deriv_mode=deriv_mode)
    logger.debug(f"Limits for '{kernel.name}' ({deriv_mode.value}): {params.to_dict()}")
    return params
