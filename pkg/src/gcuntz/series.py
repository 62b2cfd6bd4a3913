"""Truncated power series with exact rational coefficients.

The dimension generating functions live here: ``h(t)`` counts all loops at
``iota`` on the fusion graph, ``k(t)`` counts the first-return loops, and the
two are tied together by ``h = 1 / (1 - k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable

from .fusion import FusionData, matvec, reduced_matrix, require_valid

if TYPE_CHECKING:
    from .spectral import SpectralProfile

__all__ = [
    "DEFAULT_ORDER",
    "INFINITE",
    "SeriesError",
    "RationalSeries",
    "DimensionProfile",
    "h_series",
    "k_from_h",
    "k_direct",
    "evaluate",
    "skeleton_dim",
    "dimension_profile",
]

DEFAULT_ORDER = 32

#: Dimension of an infinite-dimensional skeleton space.  Compares above every integer.
INFINITE = math.inf


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class RationalSeries:
    """Power series ``c_0 + c_1 t + ... + c_M t^M`` known through order ``M``."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise SeriesError("a series needs at least the constant term")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def constant(cls, value, order: int) -> RationalSeries:
        return cls([value] + [0] * order)

    @classmethod
    def monomial(cls, power: int, order: int, value=1) -> RationalSeries:
        coeffs = [0] * (order + 1)
        if power <= order:
            coeffs[power] = value
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n):
        return self.coefficients[n]

    def __iter__(self):
        return iter(self.coefficients)

    def _coerce(self, other) -> RationalSeries:
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries.constant(other, self.order)

    def truncate(self, order: int) -> RationalSeries:
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return RationalSeries(self.coefficients[: order + 1])

    def __add__(self, other) -> RationalSeries:
        other = self._coerce(other)
        m = min(self.order, other.order)
        return RationalSeries(a + b for a, b in zip(self.coefficients[: m + 1], other.coefficients))

    __radd__ = __add__

    def __neg__(self) -> RationalSeries:
        return RationalSeries(-c for c in self.coefficients)

    def __sub__(self, other) -> RationalSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> RationalSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            return RationalSeries(c * Fraction(other) for c in self.coefficients)
        m = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        return RationalSeries(sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(m + 1))

    __rmul__ = __mul__

    def reciprocal(self) -> RationalSeries:
        """Series inverse for a unit constant term.

        Uses ``b_0 = 1``, ``b_n = -sum_{i=1..n} a_i b_{n-i}``, which stays in
        the integers when the input does.
        """
        a = self.coefficients
        if a[0] != 1:
            raise SeriesError(f"reciprocal needs constant term 1, got {a[0]}")
        b = [Fraction(1)]
        for n in range(1, len(a)):
            b.append(-sum(a[i] * b[n - i] for i in range(1, n + 1)))
        return RationalSeries(b)

    def __truediv__(self, other) -> RationalSeries:
        other = self._coerce(other)
        c0 = other.coefficients[0]
        if c0 == 0:
            raise SeriesError("division by a series with zero constant term")
        inv = 1 / Fraction(c0)
        return self * (other * inv).reciprocal() * inv

    def integers(self) -> list[int]:
        """Coefficients as ints; raises if any coefficient is not integral."""
        out = []
        for n, c in enumerate(self.coefficients):
            if c.denominator != 1:
                raise SeriesError(f"coefficient {n} is not an integer: {c}")
            out.append(int(c))
        return out

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coefficients[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"RationalSeries([{terms}{more}], order={self.order})"


@dataclass(frozen=True)
class DimensionProfile:
    h_dims: tuple[int, ...]
    k_dims: tuple[int, ...]  # k_dims[0] is dim(k_1)
    skeleton_dim: float | int

    def k(self, n: int) -> int:
        return self.k_dims[n - 1]


def h_series(data: FusionData, order: int = DEFAULT_ORDER) -> RationalSeries:
    """Coefficients ``(N**n)[iota][iota]`` for ``n = 0..order``."""
    require_valid(data)
    if order < 0:
        raise SeriesError("order must be non-negative")
    v = [int(i == data.iota) for i in range(data.size)]
    coeffs = []
    for _ in range(order + 1):
        coeffs.append(v[data.iota])
        v = matvec(data.matrix, v)
    return RationalSeries(coeffs)


def k_from_h(h: RationalSeries) -> RationalSeries:
    if h[0] != 1:
        raise SeriesError(f"h must have constant term 1, got {h[0]}")
    return 1 - h.reciprocal()


def k_direct(data: FusionData, n: int) -> int:
    """Number of first-return loops of length ``n`` at ``iota``.

    Evaluates ``N Q N Q ... Q N`` at the ``(iota, iota)`` entry with ``n``
    factors of ``N``; ``Q`` kills the ``iota`` component.
    """
    if n < 1:
        raise SeriesError(f"k_n is defined for n >= 1, got {n}")
    require_valid(data)
    iota = data.iota
    if n == 1:
        return data.matrix[iota][iota]
    red = reduced_matrix(data).matrix
    v = [data.matrix[i][iota] if i != iota else 0 for i in range(data.size)]
    for _ in range(n - 2):
        v = matvec(red, v)
    return sum(data.matrix[iota][j] * v[j] for j in range(data.size))


def evaluate(series: RationalSeries, t: float, terms: int) -> list[float]:
    """Partial sums ``sum_{n<=T} c_n t**n`` for ``T = 0..terms``."""
    if terms > series.order:
        raise SeriesError(f"{terms} terms requested from a series of order {series.order}")
    sums = []
    total = 0.0
    power = 1.0
    for n in range(terms + 1):
        total += float(series[n]) * power
        sums.append(total)
        power *= t
    return sums


def skeleton_dim(data: FusionData, spectral: SpectralProfile) -> int | float:
    """``dim K = k(1)``; :data:`INFINITE` unless the reduced matrix is nilpotent."""
    require_valid(data)
    if spectral.data != data:
        raise SeriesError("spectral profile was computed for different fusion data")
    if spectral.nilpotency_index is None:
        return INFINITE
    # k_n vanishes once n - 2 reaches the nilpotency index
    return sum(k_direct(data, n) for n in range(1, spectral.nilpotency_index + 2))


def dimension_profile(data: FusionData, spectral: SpectralProfile, order: int = DEFAULT_ORDER) -> DimensionProfile:
    h = h_series(data, order)
    k = k_from_h(h)
    return DimensionProfile(tuple(h.integers()), tuple(k.integers()[1:]), skeleton_dim(data, spectral))
