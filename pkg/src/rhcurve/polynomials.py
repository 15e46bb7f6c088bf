"""Exact bivariate polynomials in the ambient coordinates x, y.

Sparse representation: a map from exponent pairs (a, b) to nonzero
Gaussian-rational coefficients.  The zero polynomial stores nothing and
reports degree -infinity.
"""

from __future__ import annotations

import re as _re

from .rationals import GQ_ONE, GQ_ZERO, GaussianRational, format_gq, parse_gq
from .series import TruncatedSeries

__all__ = ["Polynomial2", "parse_monomial", "format_monomial"]

NEG_INF = float("-inf")


class Polynomial2:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (a, b), c in dict(terms).items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    if a < 0 or b < 0:
                        raise ValueError("negative exponent in polynomial")
                    clean[(int(a), int(b))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial2 is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial2":
        return Polynomial2()

    @staticmethod
    def constant(c) -> "Polynomial2":
        return Polynomial2({(0, 0): c})

    @staticmethod
    def monomial(c, a: int, b: int) -> "Polynomial2":
        return Polynomial2({(a, b): c})

    @staticmethod
    def x() -> "Polynomial2":
        return Polynomial2({(1, 0): GQ_ONE})

    @staticmethod
    def y() -> "Polynomial2":
        return Polynomial2({(0, 1): GQ_ONE})

    # -- inspection ------------------------------------------------------------

    def coefficient(self, a: int, b: int) -> GaussianRational:
        return self.terms.get((a, b), GQ_ZERO)

    def degree(self):
        """Total degree; -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(a + b for a, b in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> GaussianRational:
        return self.coefficient(0, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial2):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "<poly 0>"
        bits = []
        for (a, b) in sorted(self.terms, key=lambda ab: (ab[0] + ab[1], ab[0])):
            bits.append(f"({format_gq(self.terms[(a, b)])})*{format_monomial(a, b)}")
        return "<poly " + " + ".join(bits) + ">"

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other: "Polynomial2") -> "Polynomial2":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, GQ_ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial2(out)

    def __sub__(self, other: "Polynomial2") -> "Polynomial2":
        return self + (-other)

    def __neg__(self) -> "Polynomial2":
        return Polynomial2({key: -c for key, c in self.terms.items()})

    def __mul__(self, other: "Polynomial2") -> "Polynomial2":
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, GQ_ZERO) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Polynomial2(out)

    def scale(self, c: GaussianRational) -> "Polynomial2":
        if not c:
            return Polynomial2()
        return Polynomial2({key: c * v for key, v in self.terms.items()})

    def partial(self, var: str) -> "Polynomial2":
        """Formal partial derivative with respect to "x" or "y"."""
        out = {}
        for (a, b), c in self.terms.items():
            if var == "x" and a > 0:
                out[(a - 1, b)] = c * GaussianRational(a)
            elif var == "y" and b > 0:
                out[(a, b - 1)] = c * GaussianRational(b)
            elif var not in ("x", "y"):
                raise ValueError(f"unknown variable {var!r}")
        return Polynomial2(out)

    def homogeneous_part(self, d: int) -> "Polynomial2":
        return Polynomial2({k: c for k, c in self.terms.items() if k[0] + k[1] == d})

    def eval_series(self, x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
        """Substitute series with positive valuation for x and y, truncating
        at the smaller of the two orders."""
        n = min(x.order, y.order)
        for s, name in ((x, "x"), (y, "y")):
            v = s.valuation()
            if v is not None and v < 1:
                raise ValueError(f"{name}-series must vanish at s=0")
        xt, yt = x.truncate(n), y.truncate(n)
        max_a = max((a for a, _ in self.terms), default=0)
        max_b = max((b for _, b in self.terms), default=0)
        x_pow = [TruncatedSeries.one(n)]
        for _ in range(max_a):
            x_pow.append(x_pow[-1] * xt)
        y_pow = [TruncatedSeries.one(n)]
        for _ in range(max_b):
            y_pow.append(y_pow[-1] * yt)
        acc = TruncatedSeries.zero(n)
        for (a, b), c in self.terms.items():
            acc = acc + (x_pow[a] * y_pow[b]).scale(c)
        return acc

    def eval_point(self, x: GaussianRational, y: GaussianRational) -> GaussianRational:
        acc = GQ_ZERO
        for (a, b), c in self.terms.items():
            term = c
            for _ in range(a):
                term = term * x
            for _ in range(b):
                term = term * y
            acc = acc + term
        return acc

    def monomials(self):
        """Exponent pairs in the canonical (total degree, x-exponent) order."""
        return sorted(self.terms, key=lambda ab: (ab[0] + ab[1], ab[0]))


_MONO_RE = _re.compile(r"^\s*(?:1|(?:x(?:\^(\d+))?)?\s*\*?\s*(?:y(?:\^(\d+))?)?)\s*$")


def parse_monomial(text: str) -> tuple[int, int]:
    """Parse "x^a*y^b" with either factor omitted when its exponent is 0."""
    m = _MONO_RE.match(text)
    if not m or (text.strip() != "1" and "x" not in text and "y" not in text):
        raise ValueError(f"not a monomial: {text!r}")
    if text.strip() == "1":
        return (0, 0)
    a = 0 if "x" not in text else int(m.group(1) or 1)
    b = 0 if "y" not in text else int(m.group(2) or 1)
    return (a, b)


def format_monomial(a: int, b: int) -> str:
    if a == 0 and b == 0:
        return "1"
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("y" if b == 1 else f"y^{b}")
    return "*".join(parts)
