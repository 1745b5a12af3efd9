"""
Bivariate truncated power series in (y, z) with complex coefficients.

A ``TruncatedSeries2`` stores coefficient (m, n) of y^m z^n for 0 <= m <= y_order and 0 <= n <= trunc_order.
Truncation in both variables is a ring quotient (modulo y^(y_order + 1) and z^(trunc_order + 1)), so every
stored coefficient of a result is exact up to floating point rounding; nothing discarded ever feeds back.

Products are plain Cauchy convolutions. Reciprocal and square root use Newton iteration, which doubles the
number of correct total degrees per step starting from the constant term, so a fixed number of steps
(enough to cover total degree y_order + trunc_order) reaches every stored coefficient.
"""
import math
from typing import Iterable, Optional, Sequence, Tuple, Union

import attrs
import numpy as np
import pandas as pd
from scipy.special import factorial

from gfclt.exceptions import BranchError, DivisionImpossibleError
from gfclt.series.uni import UniSeries

Number = Union[int, float, complex]


def _as_coeffs_2d(values) -> np.ndarray:
    array = np.array(values, dtype=complex, ndmin=2)
    if array.ndim != 2 or 0 in array.shape:
        raise ValueError(f"TruncatedSeries2 coefficients must be a non-empty 2-D array, got shape {array.shape}")
    array.setflags(write=False)
    return array


@attrs.define(frozen=True, eq=False)
class TruncatedSeries2:
    """Truncated power series in (y, z); ``coeffs[m, n]`` is the coefficient of y^m z^n"""

    coeffs: np.ndarray = attrs.field(converter=_as_coeffs_2d)

    @property
    def y_order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def trunc_order(self) -> int:
        return self.coeffs.shape[1] - 1

    @classmethod
    def zeros(cls, y_order: int, trunc_order: int) -> "TruncatedSeries2":
        return cls(np.zeros((y_order + 1, trunc_order + 1), dtype=complex))

    @classmethod
    def constant(cls, value: Number, y_order: int, trunc_order: int) -> "TruncatedSeries2":
        coeffs = np.zeros((y_order + 1, trunc_order + 1), dtype=complex)
        coeffs[0, 0] = value
        return cls(coeffs)

    @classmethod
    def from_terms(
        cls, terms: Iterable[Sequence], y_order: Optional[int] = None, trunc_order: Optional[int] = None
    ) -> "TruncatedSeries2":
        """Build from rows (m, n, value) or (m, n, re, im); terms beyond the truncation are dropped"""
        rows = []
        for term in terms:
            if len(term) == 3:
                m, n, value = term
            elif len(term) == 4:
                m, n, re, im = term
                value = complex(re, im)
            else:
                raise ValueError(f"Expected (m, n, value) or (m, n, re, im), got {term!r}")
            if int(m) != m or int(n) != n or m < 0 or n < 0:
                raise ValueError(f"Exponents must be nonnegative integers, got ({m}, {n})")
            rows.append((int(m), int(n), complex(value)))

        if y_order is None:
            y_order = max((m for m, _, _ in rows), default=0)
        if trunc_order is None:
            trunc_order = max((n for _, n, _ in rows), default=0)

        coeffs = np.zeros((y_order + 1, trunc_order + 1), dtype=complex)
        for m, n, value in rows:
            if m <= y_order and n <= trunc_order:
                coeffs[m, n] += value
        return cls(coeffs)

    def truncate(self, y_order: Optional[int] = None, trunc_order: Optional[int] = None) -> "TruncatedSeries2":
        y_order = self.y_order if y_order is None else min(y_order, self.y_order)
        trunc_order = self.trunc_order if trunc_order is None else min(trunc_order, self.trunc_order)
        if (y_order, trunc_order) == (self.y_order, self.trunc_order):
            return self
        return TruncatedSeries2(self.coeffs[: y_order + 1, : trunc_order + 1])

    def coefficient(self, m: int, n: int) -> complex:
        if m > self.y_order or n > self.trunc_order:
            return 0j
        return complex(self.coeffs[m, n])

    def __add__(self, other):
        if isinstance(other, TruncatedSeries2):
            a, b = _aligned(self, other)
            return TruncatedSeries2(a + b)
        coeffs = self.coeffs.copy()
        coeffs[0, 0] += other
        return TruncatedSeries2(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries2(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries2):
            return ps_mul(self, other)
        return TruncatedSeries2(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries2):
            return ps_div(self, other)
        return TruncatedSeries2(self.coeffs / other)

    def to_frame(self) -> pd.DataFrame:
        """Nonzero coefficients as a table with columns m, n, re, im"""
        m, n = np.nonzero(self.coeffs)
        values = self.coeffs[m, n]
        return pd.DataFrame({"m": m, "n": n, "re": values.real, "im": values.imag})


def _aligned(a: TruncatedSeries2, b: TruncatedSeries2) -> Tuple[np.ndarray, np.ndarray]:
    y_order = min(a.y_order, b.y_order)
    trunc_order = min(a.trunc_order, b.trunc_order)
    return a.coeffs[: y_order + 1, : trunc_order + 1], b.coeffs[: y_order + 1, : trunc_order + 1]


def _toeplitz_stack(a: np.ndarray) -> np.ndarray:
    """Per z-column lower-triangular Toeplitz matrices: out[n, i, j] = a[i - j, n] for i >= j"""
    size = a.shape[0]
    shift = np.arange(size)[:, None] - np.arange(size)[None, :]
    mask = shift >= 0
    stack = a.T[:, np.where(mask, shift, 0)]
    return np.where(mask[None, :, :], stack, 0)


def _mul_coeffs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    blocks = _toeplitz_stack(a)
    out = np.zeros_like(a)
    for n in range(a.shape[1]):
        out[:, n] = np.einsum("kij,jk->i", blocks[: n + 1], b[:, n::-1])
    return out


def _newton_steps(a: TruncatedSeries2) -> int:
    return math.ceil(math.log2(a.y_order + a.trunc_order + 2)) + 1


def ps_mul(a: TruncatedSeries2, b: TruncatedSeries2) -> TruncatedSeries2:
    left, right = _aligned(a, b)
    return TruncatedSeries2(_mul_coeffs(left, right))


def ps_reciprocal(b: TruncatedSeries2) -> TruncatedSeries2:
    b00 = b.coeffs[0, 0]
    if b00 == 0:
        raise DivisionImpossibleError("Series division needs a divisor with nonzero constant term")

    s = TruncatedSeries2.constant(1.0 / b00, b.y_order, b.trunc_order)
    for _ in range(_newton_steps(b)):
        s = s * (2.0 - b * s)
    return s


def ps_div(a: TruncatedSeries2, b: TruncatedSeries2) -> TruncatedSeries2:
    return ps_mul(a, ps_reciprocal(b))


def ps_sqrt(a: TruncatedSeries2) -> TruncatedSeries2:
    """Principal square root (constant term +1) of a series whose constant term is exactly 1"""
    if a.coeffs[0, 0] != 1:
        raise BranchError(f"Only the branch through 1 is supported, constant term is {a.coeffs[0, 0]}")

    # coupled iteration: r tracks sqrt(a), s tracks 1 / r
    r = TruncatedSeries2.constant(1.0, a.y_order, a.trunc_order)
    s = TruncatedSeries2.constant(1.0, a.y_order, a.trunc_order)
    for _ in range(_newton_steps(a) + 1):
        s = s + s * (1.0 - r * s)
        r = r + 0.5 * s * (a - r * r)
    return r


def ps_log1p(a: TruncatedSeries2) -> TruncatedSeries2:
    """log(1 + a) for a series with zero constant term"""
    if a.coeffs[0, 0] != 0:
        raise BranchError(f"log1p needs a series with zero constant term, got {a.coeffs[0, 0]}")

    out = np.zeros_like(a.coeffs)
    out[:, 0] = UniSeries(a.coeffs[:, 0]).log1p().coeffs
    if a.trunc_order > 0:
        # d/dz log(1 + a) = a_z / (1 + a), integrated term by term in z
        quotient = ps_div(dz(a), 1.0 + a.truncate(trunc_order=a.trunc_order - 1))
        out[:, 1:] = quotient.coeffs / np.arange(1, a.trunc_order + 1)
    return TruncatedSeries2(out)


def ps_exp(a: TruncatedSeries2) -> TruncatedSeries2:
    c = a.coeffs
    out = np.zeros_like(c)
    out[:, 0] = UniSeries(c[:, 0]).exp().coeffs

    blocks = _toeplitz_stack(c)
    for n in range(1, a.trunc_order + 1):
        weighted = blocks[1 : n + 1] * np.arange(1, n + 1)[:, None, None]
        out[:, n] = np.einsum("kij,jk->i", weighted, out[:, n - 1 :: -1]) / n
    return TruncatedSeries2(out)


def _factorials(trunc_order: int) -> np.ndarray:
    return factorial(np.arange(trunc_order + 1), exact=False)


def borel_z(a: TruncatedSeries2) -> TruncatedSeries2:
    """Divide the coefficient of z^n by n!"""
    return TruncatedSeries2(a.coeffs / _factorials(a.trunc_order)[None, :])


def inverse_borel_z(a: TruncatedSeries2) -> TruncatedSeries2:
    """Multiply the coefficient of z^n by n!"""
    return TruncatedSeries2(a.coeffs * _factorials(a.trunc_order)[None, :])


def eval_y(a: TruncatedSeries2, y0: Number) -> UniSeries:
    """Substitute y = y0, Horner in y for every z-coefficient"""
    acc = np.zeros(a.trunc_order + 1, dtype=complex)
    for row in a.coeffs[::-1]:
        acc = acc * y0 + row
    return UniSeries(acc)


def dz(a: TruncatedSeries2) -> TruncatedSeries2:
    if a.trunc_order == 0:
        return TruncatedSeries2.zeros(a.y_order, 0)
    return TruncatedSeries2(a.coeffs[:, 1:] * np.arange(1, a.trunc_order + 1)[None, :])


def dy(a: TruncatedSeries2) -> TruncatedSeries2:
    if a.y_order == 0:
        return TruncatedSeries2.zeros(0, a.trunc_order)
    return TruncatedSeries2(a.coeffs[1:, :] * np.arange(1, a.y_order + 1)[:, None])


def theta(a: TruncatedSeries2) -> TruncatedSeries2:
    """The Euler operator y d/dy; at y = exp(ix) it equals -i d/dx"""
    return TruncatedSeries2(a.coeffs * np.arange(a.y_order + 1)[:, None])


def shift_y(a: TruncatedSeries2, k: int) -> TruncatedSeries2:
    """Multiply by y^k keeping the y-order"""
    out = np.zeros_like(a.coeffs)
    if k <= a.y_order:
        out[k:, :] = a.coeffs[: a.y_order + 1 - k, :]
    return TruncatedSeries2(out)
