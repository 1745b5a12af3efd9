from typing import Optional, Sequence, Union

import attrs
import numpy as np

from gfclt import config
from gfclt.enums import DerivMode
from gfclt.exceptions import KernelSpecError
from gfclt.kernels.kernel import ArrayLike, Kernel, KernelJet
from gfclt.series import UniSeries

NORMALIZATION_TOLERANCE = 1e-12


def _as_support(values) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim == 1:
        array = array[:, np.newaxis]
    return array


def _check_dist(instance, attribute, value):
    if instance.support.shape[0] == 0:
        raise KernelSpecError("Distribution needs a nonempty support")
    if instance.support.ndim != 2 or instance.support.shape[0] != instance.probs.shape[0]:
        raise KernelSpecError(
            f"Support has {instance.support.shape[0]} atoms but {instance.probs.shape[0]} probabilities were given"
        )
    if np.any(instance.probs < 0):
        raise KernelSpecError("Probabilities must be nonnegative")
    if abs(instance.probs.sum() - 1.0) > NORMALIZATION_TOLERANCE:
        raise KernelSpecError(f"Probabilities sum to {instance.probs.sum()!r}, not 1")


@attrs.define(frozen=True, eq=False)
class DiscreteDist:
    """Finitely supported distribution of the step X_1; atoms are rows of ``support`` (scalars become 1-vectors)"""

    support: np.ndarray = attrs.field(converter=_as_support)
    probs: np.ndarray = attrs.field(converter=lambda p: np.asarray(p, dtype=float).reshape(-1), validator=_check_dist)

    @property
    def dim(self) -> int:
        return self.support.shape[1]

    def mean(self) -> np.ndarray:
        return self.probs @ self.support

    def covariance(self) -> np.ndarray:
        centered = self.support - self.mean()
        return (centered.T * self.probs) @ centered

    def scaled(self, c: float) -> "DiscreteDist":
        return DiscreteDist(self.support * c, self.probs)

    def characteristic(self, x: ArrayLike) -> complex:
        return complex(np.sum(self.probs * np.exp(1j * (self.support @ np.asarray(x, dtype=float)))))


@attrs.define(frozen=True, eq=False, kw_only=True)
class IidKernel(Kernel):
    """g(x, z) = 1 - phi_{X_1}(x) z, the kernel of partial sums Y_n = X_1 + ... + X_n"""

    dist: DiscreteDist

    def _phi(self, x: np.ndarray):
        weights = self.dist.probs * np.exp(1j * (self.dist.support @ x))
        phi = weights.sum()
        phi_x = 1j * (self.dist.support.T @ weights)
        phi_xx = -(self.dist.support.T * weights) @ self.dist.support
        return phi, phi_x, phi_xx

    def evaluate(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        x = self.check_x(x)
        value = 1.0 - self.dist.characteristic(x) * np.asarray(z, dtype=complex)
        return value if value.ndim else complex(value)

    def jet(self, x: ArrayLike, z: complex) -> KernelJet:
        x = self.check_x(x)
        phi, phi_x, phi_xx = self._phi(x)
        z = complex(z)
        return KernelJet(value=1.0 - phi * z, dz=-phi, dx=-phi_x * z, dxx=-phi_xx * z, dxz=-phi_x)

    def f_series(self, x: ArrayLike, order: int) -> UniSeries:
        # 1 / (1 - phi z) is a pure geometric series, available to any order
        phi = self.dist.characteristic(self.check_x(x))
        return UniSeries(phi ** np.arange(order + 1))

    def closed_form_root(self, x: ArrayLike) -> complex:
        return 1.0 / self.dist.characteristic(self.check_x(x))


def make_iid_kernel(
    dist: Union[DiscreteDist, Sequence],
    probs: Optional[Sequence] = None,
    z_radius: Optional[float] = None,
    x_box: Optional[float] = None,
    deriv_mode: DerivMode = DerivMode.analytic,
    name: str = "iid",
) -> IidKernel:
    if not isinstance(dist, DiscreteDist):
        dist = DiscreteDist(dist, probs)

    defaults = config["kernel"]["iid"]
    return IidKernel(
        name=name,
        dim=dist.dim,
        z_radius=defaults["z_radius"] if z_radius is None else z_radius,
        x_box=defaults["x_box"] if x_box is None else x_box,
        deriv_mode=deriv_mode,
        dist=dist,
    )
