from typing import Iterable, Optional, Sequence

import attrs
import numpy as np

from gfclt import config
from gfclt.enums import DerivMode
from gfclt.exceptions import KernelSpecError, SeriesOrderError
from gfclt.kernels.kernel import ArrayLike, Kernel, KernelJet
from gfclt.series import TruncatedSeries2, UniSeries, dz, eval_y, ps_div, theta


@attrs.define(frozen=True, eq=False, kw_only=True)
class SeriesKernel(Kernel):
    """Kernel given by a truncated series g(y, z) in y = exp(ix), read from a coefficient table"""

    g: TruncatedSeries2

    def _at(self, series: TruncatedSeries2, x: np.ndarray) -> UniSeries:
        return eval_y(series, np.exp(1j * x[0]))

    def evaluate(self, x: ArrayLike, z: ArrayLike) -> ArrayLike:
        x = self.check_x(x)
        return self._at(self.g, x).evaluate(z)

    def jet(self, x: ArrayLike, z: complex) -> KernelJet:
        x = self.check_x(x)
        gz = dz(self.g)
        at = lambda series: self._at(series, x).evaluate(complex(z))  # noqa: E731
        return KernelJet(
            value=at(self.g),
            dz=at(gz),
            dx=np.array([1j * at(theta(self.g))]),
            dxx=np.array([[-at(theta(theta(self.g)))]]),
            dxz=np.array([1j * at(theta(gz))]),
        )

    def f_series(self, x: ArrayLike, order: int) -> UniSeries:
        x = self.check_x(x)
        if order > self.g.trunc_order:
            raise SeriesOrderError(f"Requested order {order} exceeds the table order {self.g.trunc_order}")
        return 1.0 / self._at(self.g, x).truncate(order)


def make_series_kernel(
    terms: Iterable[Sequence],
    which: str = "g",
    z_radius: Optional[float] = None,
    x_box: Optional[float] = None,
    deriv_mode: DerivMode = DerivMode.analytic,
) -> SeriesKernel:
    """``terms`` are rows (m, n, re, im) of the series of g, or of f = 1 / g when ``which`` is 'f'"""
    series = TruncatedSeries2.from_terms(terms)
    if which == "f":
        if series.coeffs[0, 0] == 0:
            raise KernelSpecError("A series for f = 1 / g needs a nonzero constant term")
        series = ps_div(TruncatedSeries2.constant(1.0, series.y_order, series.trunc_order), series)
    elif which != "g":
        raise KernelSpecError(f"Series kernels describe 'g' or 'f', got {which!r}")

    defaults = config["kernel"]["series"]
    return SeriesKernel(
        name=f"series({which}, trunc={series.trunc_order})",
        dim=1,
        z_radius=defaults["z_radius"] if z_radius is None else z_radius,
        x_box=defaults["x_box"] if x_box is None else x_box,
        deriv_mode=deriv_mode,
        g=series,
    )
