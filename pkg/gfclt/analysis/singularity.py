"""
The dominant zero b(x) of z -> g(x, z) near z = 1 and the principal part of f = 1 / g there.

Near the simple pole f(x, z) ~ a(x) / (1 - z / b(x)) with a(x) = -1 / (b(x) g_z(x, b(x))), so
phi_{Y_n}(x) = a(x) b(x)^(-n) + O(r^(-n)) for some r > |b(x)|. Roots are followed from b(0) = 1 by continuation
in x so that Newton stays on the branch given by the implicit function theorem.
"""
import logging
import math
from typing import Optional, Sequence

import attrs
import numpy as np
from scipy.stats import linregress

from gfclt import config
from gfclt.exceptions import KernelDomainError, RootTrackingError
from gfclt.kernels import Kernel
from gfclt.kernels.kernel import ArrayLike

logger = logging.getLogger(__name__)


def _pair(value: complex) -> list:
    return [float(np.real(value)), float(np.imag(value))]


@attrs.define(frozen=True, eq=False)
class Singularity:
    x: np.ndarray
    b: complex
    a: complex
    newton_iters: int
    residual: float

    def to_dict(self) -> dict:
        return {
            "x": self.x.tolist(),
            "b": _pair(self.b),
            "a": _pair(self.a),
            "newton_iters": self.newton_iters,
            "residual": self.residual,
        }


def _newton(kernel: Kernel, x: np.ndarray, z: complex):
    settings = config["singularity"]
    value = complex(kernel.evaluate(x, z))

    iters = 0
    while abs(value) >= settings["newton_tolerance"]:
        if iters >= settings["newton_max_iter"]:
            raise RootTrackingError(
                f"Newton did not converge at x = {x.tolist()} after {iters} iterations (|g| = {abs(value):.3g})"
            )
        iters += 1

        slope = kernel.z_derivative(x, z)
        if slope == 0:
            raise RootTrackingError(f"g_z vanishes at x = {x.tolist()}, z = {z}")
        step = value / slope
        if abs(z - step) > kernel.z_radius:
            raise KernelDomainError(f"Root left the disc |z| <= {kernel.z_radius} at x = {x.tolist()}")

        # damped: halve the step while |g| grows
        damping = 1.0
        candidate = z - step
        new_value = complex(kernel.evaluate(x, candidate))
        while abs(new_value) > abs(value) and damping > 2**-10:
            damping /= 2
            candidate = z - damping * step
            new_value = complex(kernel.evaluate(x, candidate))

        z, value = candidate, new_value
        if abs(damping * step) <= 4 * np.finfo(float).eps * abs(z):
            break

    logger.debug(f"Newton at x = {x.tolist()}: z = {z}, |g| = {abs(value):.3g}, {iters} iterations")
    return z, value, iters


def track_root(kernel: Kernel, x: ArrayLike) -> Singularity:
    """Follow the zero of g(x, .) from (0, 1) to ``x`` along the ray t x, 0 <= t <= 1"""
    settings = config["singularity"]
    x = kernel.check_x(x)
    steps = max(1, math.ceil(np.linalg.norm(x) / settings["continuation_step"]))

    z = 1.0 + 0j
    total_iters = 0
    value = 0j
    for t in np.arange(1, steps + 1) / steps:
        z_new, value, iters = _newton(kernel, t * x, z)
        total_iters += iters
        if abs(z_new - z) > settings["max_root_jump"]:
            raise RootTrackingError(f"Root jumped by {abs(z_new - z):.3g} at x = {(t * x).tolist()}")
        if abs(z_new) > kernel.z_radius:
            raise KernelDomainError(f"Root {z_new} left the disc |z| <= {kernel.z_radius}")
        z = z_new

    residual = abs(value)
    if residual > settings["residual_tolerance"]:
        raise RootTrackingError(f"Root at x = {x.tolist()} has residual {residual:.3g}")

    a = -1.0 / (z * kernel.z_derivative(x, z))
    return Singularity(x=x, b=complex(z), a=complex(a), newton_iters=total_iters, residual=float(residual))


def principal_part_phi(singularity: Singularity, n: int) -> complex:
    """a(x) b(x)^(-n), the pole contribution to phi_{Y_n}(x)"""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return complex(singularity.a * singularity.b ** (-n))


@attrs.define(frozen=True, eq=False)
class TaylorFitReport:
    norms: np.ndarray
    remainders: np.ndarray
    order: float
    min_order: float

    @property
    def passed(self) -> bool:
        return bool(self.order > self.min_order)

    def to_dict(self) -> dict:
        return {
            "norms": self.norms.tolist(),
            "remainders": self.remainders.tolist(),
            "order": self.order,
            "min_order": self.min_order,
            "passed": self.passed,
        }


def halving_points(kernel: Kernel, direction: Optional[ArrayLike] = None) -> list:
    settings = config["singularity"]["taylor"]
    if direction is None:
        direction = np.eye(kernel.dim)[0]
    direction = np.asarray(direction, dtype=float) / np.linalg.norm(direction)
    return [settings["x0"] / 2**k * direction for k in range(settings["levels"])]


def log_b_taylor(kernel: Kernel, lp, xs: Optional[Sequence[ArrayLike]] = None) -> TaylorFitReport:
    """
    Fit the order p of R(x) = log b(x) + i<mu, x> - 1/2 <x, Sigma x> ~ C |x|^p on points shrinking toward 0.
    ``lp`` is the LimitParams of the kernel. Remainders at the rounding floor are left out of the fit.
    """
    settings = config["singularity"]["taylor"]
    xs = halving_points(kernel) if xs is None else [np.asarray(x, dtype=float).reshape(-1) for x in xs]

    norms, remainders = [], []
    for x in xs:
        singularity = track_root(kernel, x)
        remainder = np.log(singularity.b) + 1j * (lp.mu @ x) - 0.5 * (x @ lp.sigma @ x)
        norms.append(np.linalg.norm(x))
        remainders.append(abs(remainder))
    norms, remainders = np.asarray(norms), np.asarray(remainders)

    keep = (norms > 0) & (remainders > settings["floor"])
    if keep.sum() < 2:
        order = math.inf
    else:
        order = float(linregress(np.log(norms[keep]), np.log(remainders[keep])).slope)
    return TaylorFitReport(norms=norms, remainders=remainders, order=order, min_order=settings["min_order"])
