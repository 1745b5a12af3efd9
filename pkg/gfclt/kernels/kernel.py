from abc import ABC, abstractmethod
from typing import Union

import attrs
import numpy as np

from gfclt import config
from gfclt.enums import DerivMode
from gfclt.exceptions import KernelDomainError, SeriesUnavailableError
from gfclt.series import UniSeries
from gfclt.utils.quadrature import cauchy_derivatives

ArrayLike = Union[float, complex, np.ndarray]


@attrs.define(frozen=True, eq=False)
class KernelJet:
    """Value of g and the partial derivatives the limit formulas need, at one point (x, z)

    Args:
        value:  g(x, z)
        dz:     g_z(x, z)
        dx:     (d,) vector of g_{x_j}(x, z)
        dxx:    (d, d) matrix of g_{x_j x_k}(x, z)
        dxz:    (d,) vector of g_{x_j z}(x, z)
    """

    value: complex
    dz: complex
    dx: np.ndarray
    dxx: np.ndarray
    dxz: np.ndarray


@attrs.define(frozen=True, eq=False, kw_only=True)
class Kernel(ABC):
    """A kernel g(x, z), the reciprocal of the generating function sum_n phi_{Y_n}(x) z^n

    Args:
        name:        Human readable label, carried into reports
        dim:         Dimension d of the frequency variable x
        z_radius:    Radius in z (> 1) on which g is analytic for the x of interest
        x_box:       Half-width of the cube around x = 0 where ``evaluate`` is valid
        deriv_mode:  Whether x-partials come from ``jet`` (analytic) or must be differenced
    """

    name: str
    dim: int = attrs.field(validator=attrs.validators.gt(0))
    z_radius: float = attrs.field(validator=attrs.validators.gt(1.0))
    x_box: float = attrs.field(validator=attrs.validators.gt(0.0))
    deriv_mode: DerivMode = DerivMode.analytic

    @abstractmethod
    def evaluate(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        """g(x, z); ``z`` may be an array of points sharing the same x"""
        pass

    def jet(self, x: ArrayLike, z: complex) -> KernelJet:
        raise NotImplementedError(f"Kernel '{self.name}' does not supply analytic partial derivatives")

    def f_series(self, x: ArrayLike, order: int) -> UniSeries:
        """Coefficients phi_{Y_0..order}(x) of 1 / g(x, .) as a truncated series"""
        raise SeriesUnavailableError(f"Kernel '{self.name}' has no series form of 1 / g")

    @property
    def cauchy_radius(self) -> float:
        return min(self.z_radius - 1.0, 0.5) / 2.0

    def check_x(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.shape != (self.dim,):
            raise ValueError(f"Kernel '{self.name}' expects x of dimension {self.dim}, got {x.shape[0]}")
        if np.max(np.abs(x), initial=0.0) > self.x_box * (1 + 1e-12):
            raise KernelDomainError(f"x = {x.tolist()} is outside the validity box |x_j| <= {self.x_box}")
        return x

    def z_derivative(self, x: ArrayLike, z: complex) -> complex:
        """g_z(x, z), analytic when the kernel supplies it, otherwise by Cauchy differentiation around z"""
        if self.deriv_mode is DerivMode.analytic:
            return self.jet(x, z).dz
        nodes = config["coeffs"]["cauchy_nodes"]
        return complex(cauchy_derivatives(lambda w: self.evaluate(x, w), z, 1, self.cauchy_radius, nodes)[1])
