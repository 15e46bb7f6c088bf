"""Truncated univariate power series with Gaussian-rational coefficients.

A ``TruncatedSeries`` is known modulo ``s**order``; it stores exactly
``order`` coefficients.  Arithmetic never claims more precision than the
inputs justify: binary operations truncate to the smaller order, the
derivative loses one order, the integral gains one.
"""

from __future__ import annotations

from .rationals import GQ_ONE, GQ_ZERO, GaussianRational

__all__ = ["TruncatedSeries", "NotAUnit", "InnerNotNilpotent"]


class NotAUnit(ArithmeticError):
    """Inversion of a series whose constant term is zero."""


class InnerNotNilpotent(ArithmeticError):
    """Composition with an inner series whose constant term is nonzero."""


class TruncatedSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        coeffs = [c if isinstance(c, GaussianRational) else GaussianRational(c) for c in coeffs]
        if order is None:
            order = len(coeffs)
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(coeffs) < order:
            coeffs = coeffs + [GQ_ZERO] * (order - len(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs[:order]))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries([], order)

    @staticmethod
    def constant(c, order: int) -> "TruncatedSeries":
        return TruncatedSeries([c], order)

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries([GQ_ONE], order)

    @staticmethod
    def identity(order: int) -> "TruncatedSeries":
        """The series s itself."""
        return TruncatedSeries([GQ_ZERO, GQ_ONE], order)

    @staticmethod
    def monomial(c, k: int, order: int) -> "TruncatedSeries":
        coeffs = [GQ_ZERO] * min(k, order)
        if k < order:
            coeffs.append(c if isinstance(c, GaussianRational) else GaussianRational(c))
        return TruncatedSeries(coeffs, order)

    # -- inspection ----------------------------------------------------------

    def __getitem__(self, k: int) -> GaussianRational:
        if not (0 <= k < self.order):
            raise IndexError(f"coefficient s^{k} not known at order {self.order}")
        return self.coeffs[k]

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero mod s^order."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(list(self.coeffs[:order]), order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*s^{k}" for k, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"<{body} mod s^{self.order}>"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] + other.coeffs[k] for k in range(n)], n)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries([self.coeffs[k] - other.coeffs[k] for k in range(n)], n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [GQ_ZERO] * n
        for i in range(min(len(a), n)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
        return TruncatedSeries(out, n)

    def scale(self, c: GaussianRational) -> "TruncatedSeries":
        return TruncatedSeries([c * a for a in self.coeffs], self.order)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse at the same order; constant term must be a unit."""
        if self.order == 0:
            return self
        c0 = self.coeffs[0]
        if not c0:
            raise NotAUnit("series has zero constant term")
        inv0 = GQ_ONE / c0
        out = [inv0]
        for n in range(1, self.order):
            acc = GQ_ZERO
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc = acc + self.coeffs[k] * out[n - k]
            out.append(-inv0 * acc)
        return TruncatedSeries(out, self.order)

    def derivative(self) -> "TruncatedSeries":
        n = max(self.order - 1, 0)
        return TruncatedSeries(
            [GaussianRational(k + 1) * self.coeffs[k + 1] for k in range(n)], n
        )

    def integral(self, constant=GQ_ZERO) -> "TruncatedSeries":
        if not isinstance(constant, GaussianRational):
            constant = GaussianRational(constant)
        out = [constant]
        for k, c in enumerate(self.coeffs):
            out.append(c / GaussianRational(k + 1))
        return TruncatedSeries(out, self.order + 1)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(s)); inner must have zero constant term."""
        if inner.order > 0 and inner.coeffs[0]:
            raise InnerNotNilpotent("inner series has nonzero constant term")
        n = min(self.order, inner.order)
        inner_n = inner.truncate(n)
        # Horner from the top; powers of inner beyond n vanish mod s^n.
        result = TruncatedSeries.zero(n)
        for k in range(min(self.order, n) - 1, -1, -1):
            result = result * inner_n + TruncatedSeries.constant(self.coeffs[k], n)
        return result

    def power(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result
