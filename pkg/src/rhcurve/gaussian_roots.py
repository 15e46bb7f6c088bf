"""Roots of univariate polynomials inside the Gaussian rationals.

Candidates come from the rational-root theorem over the Gaussian integers:
clear denominators, enumerate divisors of the trailing and leading
coefficients in Z[i] (via factification of their integer norms), and test
each quotient exactly.  Everything at desk scale; coefficients in this
package stay tiny.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .rationals import GQ_ONE, GQ_ZERO, GaussianRational

__all__ = ["gaussian_rational_roots", "roots_with_multiplicity"]

UNITS = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
)


def _factor_int(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _split_prime(p: int) -> tuple[int, int]:
    """Write p = a**2 + b**2 for a prime p = 2 or p = 1 mod 4."""
    for a in range(1, isqrt(p) + 1):
        b2 = p - a * a
        b = isqrt(b2)
        if b * b == b2:
            return a, b
    raise ValueError(f"prime {p} is not a sum of two squares")


def _zi_divides(d: GaussianRational, z: GaussianRational) -> bool:
    q = z * d.conjugate()
    n = d.norm()
    return q.re % n == 0 and q.im % n == 0


def _gaussian_divisors(z: GaussianRational) -> list[GaussianRational]:
    """All divisors of a nonzero Gaussian integer, up to unit multiples."""
    primes: list[GaussianRational] = []
    norm = int(z.norm())
    for p, _ in _factor_int(norm).items():
        if p == 2:
            primes.append(GaussianRational(1, 1))
        elif p % 4 == 3:
            primes.append(GaussianRational(p))
        else:
            a, b = _split_prime(p)
            primes.append(GaussianRational(a, b))
            primes.append(GaussianRational(a, -b))
    factors: list[tuple[GaussianRational, int]] = []
    rem = z
    for pi in primes:
        e = 0
        while _zi_divides(pi, rem):
            rem = rem * pi.conjugate()
            n = pi.norm()
            rem = GaussianRational(rem.re / n, rem.im / n)
            e += 1
        if e:
            factors.append((pi, e))
    divisors = [GQ_ONE]
    for pi, e in factors:
        divisors = [d * _pow(pi, k) for d in divisors for k in range(e + 1)]
    return divisors


def _pow(z: GaussianRational, k: int) -> GaussianRational:
    out = GQ_ONE
    for _ in range(k):
        out = out * z
    return out


def _eval_poly(coeffs: list[GaussianRational], z: GaussianRational) -> GaussianRational:
    acc = GQ_ZERO
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _deflate(coeffs: list[GaussianRational], root: GaussianRational) -> list[GaussianRational]:
    """Synthetic division by (z - root) for a polynomial with root as a zero."""
    d = len(coeffs) - 1
    quotient = [GQ_ZERO] * d
    quotient[d - 1] = coeffs[d]
    for k in range(d - 1, 0, -1):
        quotient[k - 1] = coeffs[k] + root * quotient[k]
    return quotient


def gaussian_rational_roots(coeffs: list[GaussianRational]) -> list[GaussianRational]:
    """Distinct roots in Q(i) of sum(coeffs[k] * z**k)."""
    cs = list(coeffs)
    while cs and not cs[-1]:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots: list[GaussianRational] = []
    if not cs[0]:
        roots.append(GQ_ZERO)
        while cs and not cs[0]:
            cs.pop(0)
    if len(cs) <= 1:
        return roots
    # clear denominators to land in Z[i]
    denom = 1
    for c in cs:
        for f in (c.re, c.im):
            denom = denom * f.denominator // gcd(denom, f.denominator)
    zi = [GaussianRational(c.re * denom, c.im * denom) for c in cs]
    content = 0
    for c in zi:
        content = gcd(content, gcd(int(c.re), int(c.im)))
    if content > 1:
        zi = [GaussianRational(c.re / content, c.im / content) for c in zi]
    trailing, leading = zi[0], zi[-1]
    seen: set[GaussianRational] = set()
    for u in _gaussian_divisors(trailing):
        for v in _gaussian_divisors(leading):
            for unit in UNITS:
                cand = u * unit / v
                if cand in seen:
                    continue
                seen.add(cand)
                if not _eval_poly(cs, cand):
                    roots.append(cand)
    return roots


def roots_with_multiplicity(coeffs: list[GaussianRational]) -> list[tuple[GaussianRational, int]]:
    """Distinct Q(i) roots with multiplicities, by repeated deflation."""
    out = []
    for root in gaussian_rational_roots(coeffs):
        mult = 0
        work = list(coeffs)
        while len(work) > 1 and not _eval_poly(work, root):
            work = _deflate(work, root)
            mult += 1
        out.append((root, mult))
    return out
