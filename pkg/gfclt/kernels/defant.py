"""
Kernel of the descent statistic des(s(pi_n)) + 1 under West's stack-sorting map.

With F(y, z) = (y / 2) (-1 - y z + sqrt(1 - 4z + 2yz + y^2 z^2)) (principal branch) and F^ its Borel
transform in z, the generating function of the characteristic functions is -F^_z / (1 + F^) at y = exp(ix),
so the kernel is
    g(x, z) = -(1 + F^(e^{ix}, z)) / F^_z(e^{ix}, z).
F^ is entire; after truncation at z^trunc its tail at |z| <= z_radius is negligible (terms decay like c^n / n!).
x-partials are exact: d/dx acts on y = exp(ix) as i * theta with theta = y d/dy applied to the stored series.
"""
import functools
import logging
from typing import Optional

import attrs
import numpy as np

from gfclt import config
from gfclt.enums import DerivMode
from gfclt.exceptions import KernelSpecError, SeriesOrderError, SingularKernelError
from gfclt.kernels.kernel import ArrayLike, Kernel, KernelJet
from gfclt.series import TruncatedSeries2, UniSeries, borel_z, dz, eval_y, ps_div, ps_sqrt, shift_y, theta
from gfclt.utils.constants import DEFANT_RADICAND_TERMS

logger = logging.getLogger(__name__)


@attrs.define(frozen=True, eq=False)
class DefantSeries:
    """The series behind the kernel, all with z-truncation ``trunc`` and y-truncation ``trunc + 1``

    Args:
        f:      F(y, z)
        f_hat:  F^(y, z), coefficient of y^m z^n equal to F_{m,n} / n!
    """

    trunc: int
    f: TruncatedSeries2
    f_hat: TruncatedSeries2


@functools.lru_cache(maxsize=8)
def defant_series(trunc: int) -> DefantSeries:
    y_order = trunc + 1
    radicand = TruncatedSeries2.from_terms(DEFANT_RADICAND_TERMS, y_order=y_order, trunc_order=trunc)
    yz = TruncatedSeries2.from_terms([(1, 1, 1.0)], y_order=y_order, trunc_order=trunc)

    root = ps_sqrt(radicand)
    f = 0.5 * shift_y(root - 1.0 - yz, 1)
    logger.debug(f"Built Defant series at truncation {trunc}")
    return DefantSeries(trunc=trunc, f=f, f_hat=borel_z(f))


@attrs.define(frozen=True, eq=False)
class _Parts:
    u: TruncatedSeries2  # F^
    v: TruncatedSeries2  # F^_z
    vz: TruncatedSeries2  # F^_zz
    tu: TruncatedSeries2
    ttu: TruncatedSeries2
    tv: TruncatedSeries2
    ttv: TruncatedSeries2
    tvz: TruncatedSeries2


@functools.lru_cache(maxsize=8)
def _defant_parts(trunc: int) -> _Parts:
    u = defant_series(trunc).f_hat
    v = dz(u)
    vz = dz(v)
    return _Parts(
        u=u, v=v, vz=vz, tu=theta(u), ttu=theta(theta(u)), tv=theta(v), ttv=theta(theta(v)), tvz=theta(vz)
    )


@attrs.define(frozen=True, eq=False, kw_only=True)
class DefantKernel(Kernel):
    trunc: int
    singular_tolerance: float = config["kernel"]["defant"]["singular_tolerance"]
    _parts: _Parts = attrs.field(
        init=False, default=attrs.Factory(lambda self: _defant_parts(self.trunc), takes_self=True)
    )

    def _at(self, series: TruncatedSeries2, x: np.ndarray) -> UniSeries:
        return eval_y(series, np.exp(1j * x[0]))

    def _check_denominator(self, v, x, z):
        if np.any(np.abs(v) <= self.singular_tolerance):
            raise SingularKernelError(f"F^_z(e^(ix), z) vanishes at x = {x.tolist()}, z = {z}")

    def evaluate(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        x = self.check_x(x)
        z = np.asarray(z, dtype=complex)
        u = 1.0 + self._at(self._parts.u, x).evaluate(z)
        v = self._at(self._parts.v, x).evaluate(z)
        self._check_denominator(v, x, z)
        value = -u / v
        return value if np.ndim(value) else complex(value)

    def jet(self, x: ArrayLike, z: complex) -> KernelJet:
        x = self.check_x(x)
        z = complex(z)
        p = self._parts
        at = lambda series: self._at(series, x).evaluate(z)  # noqa: E731

        u, v, vz = 1.0 + at(p.u), at(p.v), at(p.vz)
        self._check_denominator(v, x, z)

        # d/dx = i theta, so a second x-derivative is -theta^2
        ux, uxx = 1j * at(p.tu), -at(p.ttu)
        vx, vxx, vxz = 1j * at(p.tv), -at(p.ttv), 1j * at(p.tvz)

        # g = -u / v with u_z = v
        num = ux * v - u * vx
        gx = -num / v**2
        gxx = -((uxx * v - u * vxx) / v**2 - 2.0 * num * vx / v**3)
        gxz = -((ux * vz - u * vxz) / v**2 - 2.0 * num * vz / v**3)
        return KernelJet(
            value=-u / v,
            dz=-1.0 + u * vz / v**2,
            dx=np.array([gx]),
            dxx=np.array([[gxx]]),
            dxz=np.array([gxz]),
        )

    def f_series(self, x: ArrayLike, order: int) -> UniSeries:
        x = self.check_x(x)
        if order > self.trunc - 1:
            raise SeriesOrderError(f"Requested order {order} exceeds the available order {self.trunc - 1}")
        numerator = -self._at(self._parts.v, x).truncate(order)
        denominator = 1.0 + self._at(self._parts.u, x).truncate(order)
        return numerator / denominator

    def pgf_series(self) -> TruncatedSeries2:
        """sum_n E[y^(des(s(pi_n)) + 1)] z^n; coefficient (m, n) is the probability of value m at size n"""
        u, v = self._parts.u, self._parts.v
        return ps_div(-v, 1.0 + u.truncate(trunc_order=v.trunc_order))

    @property
    def series(self) -> DefantSeries:
        return defant_series(self.trunc)


def make_defant_kernel(
    trunc: Optional[int] = None, deriv_mode: DerivMode = DerivMode.analytic, **overrides
) -> DefantKernel:
    defaults = config["kernel"]["defant"]
    trunc = config["series"]["default_trunc"] if trunc is None else int(trunc)
    if trunc < defaults["min_trunc"]:
        raise KernelSpecError(f"Defant kernel needs trunc >= {defaults['min_trunc']}, got {trunc}")

    return DefantKernel(
        name=f"defant(trunc={trunc})",
        dim=1,
        z_radius=overrides.get("z_radius", defaults["z_radius"]),
        x_box=overrides.get("x_box", defaults["x_box"]),
        deriv_mode=deriv_mode,
        trunc=trunc,
    )
