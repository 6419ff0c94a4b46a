"""Truncated power series with exact (or float) coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class FormalSeries:
    """``c[0] + c[1] y + ... + c[N] y^N``; nothing past ``order`` is ever read."""

    coefficients: tuple
    order: int

    def __post_init__(self):
        coeffs = tuple(self.coefficients[: self.order + 1])
        coeffs += (0,) * (self.order + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, coefficients: Sequence, order: int | None = None) -> FormalSeries:
        coefficients = tuple(coefficients)
        return cls(coefficients, len(coefficients) - 1 if order is None else order)

    @property
    def exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coefficients)

    def __getitem__(self, i: int):
        return self.coefficients[i]

    def _align(self, other):
        if not isinstance(other, FormalSeries):
            other = FormalSeries.of((other,), self.order)
        return other, min(self.order, other.order)

    def __add__(self, other):
        other, n = self._align(other)
        return FormalSeries(tuple(self[i] + other[i] for i in range(n + 1)), n)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries(tuple(-c for c in self.coefficients), self.order)

    def __sub__(self, other):
        return self + (-other if isinstance(other, FormalSeries) else -other)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries(tuple(c * other for c in self.coefficients), self.order)
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coefficients[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other[j]
        return FormalSeries(tuple(out), n)

    __rmul__ = __mul__

    def shift(self, k: int) -> FormalSeries:
        """Multiply by ``y^k`` (truncating at the same order)."""
        return FormalSeries((0,) * k + self.coefficients, self.order)

    def reciprocal(self) -> FormalSeries:
        if self[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        one = Fraction(1) if self.exact else 1.0
        out = [one / self[0]]
        for m in range(1, self.order + 1):
            acc = sum(self[j] * out[m - j] for j in range(1, m + 1))
            out.append(-acc / self[0])
        return FormalSeries(tuple(out), self.order)

    def compose(self, inner: FormalSeries) -> FormalSeries:
        """``self(inner(y))``; ``inner`` must have zero constant term."""
        if inner[0] != 0:
            raise ValueError("inner series must vanish at 0")
        n = min(self.order, inner.order)
        result = FormalSeries.of((self[n],), n)
        for i in range(n - 1, -1, -1):
            result = result * inner + self[i]
        return result

    def reverse(self) -> FormalSeries:
        """Compositional inverse of a series ``a1 y + a2 y^2 + ...`` with ``a1 != 0``."""
        if self[0] != 0 or self.order < 1 or self[1] == 0:
            raise ValueError("reversion needs zero constant term and nonzero linear term")
        n = self.order
        exact = self.exact
        # Newton-free fixed point: g = (y - (f(g) - a1 g)) / a1, one order per pass
        a1 = self[1]
        g = FormalSeries.of((0, (Fraction(1) if exact else 1.0) / a1), n)
        for _ in range(n):
            fg = self.compose(g)
            g = g - (fg - FormalSeries.of((0, 1), n)) * ((Fraction(1) if exact else 1.0) / a1)
        return g
