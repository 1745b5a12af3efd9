from typing import Union

import attrs
import numpy as np

from gfclt.exceptions import BranchError, DivisionImpossibleError

Number = Union[int, float, complex]


def _as_coeffs_1d(values) -> np.ndarray:
    array = np.array(values, dtype=complex, ndmin=1)
    if array.ndim != 1 or array.size == 0:
        raise ValueError(f"UniSeries coefficients must be a non-empty 1-D array, got shape {array.shape}")
    array.setflags(write=False)
    return array


@attrs.define(frozen=True, eq=False)
class UniSeries:
    """Univariate power series in z truncated at order ``trunc_order``; coefficient n belongs to z^n.

    All operations are exact modulo z^(trunc_order + 1). Combining two series truncates to the lower order.
    """

    coeffs: np.ndarray = attrs.field(converter=_as_coeffs_1d)

    @property
    def trunc_order(self) -> int:
        return self.coeffs.shape[0] - 1

    @classmethod
    def constant(cls, value: Number, trunc_order: int) -> "UniSeries":
        coeffs = np.zeros(trunc_order + 1, dtype=complex)
        coeffs[0] = value
        return cls(coeffs)

    def truncate(self, trunc_order: int) -> "UniSeries":
        if trunc_order >= self.trunc_order:
            return self
        return UniSeries(self.coeffs[: trunc_order + 1])

    def _aligned(self, other: "UniSeries"):
        order = min(self.trunc_order, other.trunc_order)
        return self.coeffs[: order + 1], other.coeffs[: order + 1]

    def __add__(self, other):
        if isinstance(other, UniSeries):
            a, b = self._aligned(other)
            return UniSeries(a + b)
        coeffs = self.coeffs.copy()
        coeffs[0] += other
        return UniSeries(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return UniSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniSeries):
            a, b = self._aligned(other)
            return UniSeries(np.convolve(a, b)[: a.shape[0]])
        return UniSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UniSeries):
            a, b = self._aligned(other)
            return UniSeries(_long_division(a, b))
        return UniSeries(self.coeffs / other)

    def __rtruediv__(self, other):
        return UniSeries.constant(other, self.trunc_order) / self

    def derivative(self) -> "UniSeries":
        if self.trunc_order == 0:
            return UniSeries([0.0])
        return UniSeries(self.coeffs[1:] * np.arange(1, self.trunc_order + 1))

    def integral(self, constant: Number = 0.0) -> "UniSeries":
        coeffs = np.empty(self.trunc_order + 2, dtype=complex)
        coeffs[0] = constant
        coeffs[1:] = self.coeffs / np.arange(1, self.trunc_order + 2)
        return UniSeries(coeffs)

    def evaluate(self, z):
        """Horner evaluation; ``z`` may be a scalar or an array"""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc if acc.ndim else complex(acc)

    def exp(self) -> "UniSeries":
        c = self.coeffs
        out = np.zeros_like(c)
        out[0] = np.exp(c[0])
        k = np.arange(1, c.shape[0])
        for n in range(1, c.shape[0]):
            out[n] = np.dot(k[:n] * c[1 : n + 1], out[:n][::-1]) / n
        return UniSeries(out)

    def log1p(self) -> "UniSeries":
        if self.coeffs[0] != 0:
            raise BranchError(f"log1p needs a series with zero constant term, got {self.coeffs[0]}")
        if self.trunc_order == 0:
            return UniSeries([0.0])
        quotient = self.derivative() / (1.0 + self.truncate(self.trunc_order - 1))
        return quotient.integral()


def _long_division(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if b[0] == 0:
        raise DivisionImpossibleError("Series division needs a divisor with nonzero constant term")
    out = np.zeros(a.shape[0], dtype=complex)
    for n in range(a.shape[0]):
        out[n] = (a[n] - np.dot(b[1 : n + 1], out[:n][::-1])) / b[0]
    return out
