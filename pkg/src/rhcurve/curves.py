"""Plane curves at the origin: branch parametrizations and their verification.

A curve is the zero set of a nonzero polynomial f with f(0,0) = 0.  Branches
are integer-exponent series parametrizations (x(s), y(s)) centered at the
origin; a Puiseux exponent p/q shows up as the q-fold cover x = s**q.  The
built-in Newton-polygon expansion handles the fragment where every needed
characteristic root lies in the Gaussian rationals; anything beyond that
raises IrrationalLeadingCoefficient and the caller supplies branches
explicitly (they get machine-verified either way).
"""

from __future__ import annotations

import math
from math import gcd

from .gaussian_roots import gaussian_rational_roots, roots_with_multiplicity
from .polynomials import Polynomial2
from .rationals import GQ_ONE, GQ_ZERO, GaussianRational
from .series import TruncatedSeries

__all__ = [
    "PlaneCurve",
    "Branch",
    "Normalization",
    "IrrationalLeadingCoefficient",
    "DuplicateDirection",
    "verify_branch",
    "newton_puiseux",
    "make_line_union",
    "branches_equivalent",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 40


class IrrationalLeadingCoefficient(ArithmeticError):
    """A Newton-polygon edge whose characteristic equation has no root in Q(i)."""

    def __init__(self, edge: tuple[tuple[int, int], tuple[int, int]]):
        self.edge = edge
        super().__init__(
            f"characteristic equation on the Newton-polygon edge {edge[0]} -> {edge[1]} "
            "has no Gaussian-rational root; supply this branch explicitly"
        )


class DuplicateDirection(ValueError):
    """Two proportional directions passed to make_line_union."""


class PlaneCurve:
    """Zero set of f near the origin, with cached partial derivatives."""

    __slots__ = ("f", "fx", "fy")

    def __init__(self, f: Polynomial2):
        if f.is_zero():
            raise ValueError("curve polynomial must be nonzero")
        if f.constant_term():
            raise ValueError("curve must pass through the origin: f(0,0) = 0 required")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "fx", f.partial("x"))
        object.__setattr__(self, "fy", f.partial("y"))

    def __setattr__(self, name, value):
        raise AttributeError("PlaneCurve is immutable")

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"PlaneCurve({self.f!r})"


class Branch:
    """A parametrization (x(s), y(s)) of one local component, mod s**order.

    Both coordinates vanish at s = 0, they are not both identically zero,
    and the exponent support is primitive (the gcd of all exponents carrying
    a nonzero coefficient is 1), so the parameter runs over the branch once.
    """

    __slots__ = ("x", "y", "order")

    def __init__(self, x: TruncatedSeries, y: TruncatedSeries, order: int | None = None):
        n = min(x.order, y.order)
        if order is not None:
            if order > n:
                raise ValueError(f"branch order {order} exceeds series precision {n}")
            n = order
        x, y = x.truncate(n), y.truncate(n)
        for s, name in ((x, "x"), (y, "y")):
            if s.valuation() == 0:
                raise ValueError(f"{name}(s) must vanish at s = 0")
        if x.is_zero() and y.is_zero():
            raise ValueError("branch cannot be identically zero")
        g = 0
        for series in (x, y):
            for k in range(n):
                if series.coeffs[k]:
                    g = gcd(g, k)
        if g != 1:
            raise ValueError(f"branch is not primitive: exponent gcd is {g}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "order", n)

    def __setattr__(self, name, value):
        raise AttributeError("Branch is immutable")

    def orders(self) -> tuple[int | None, int | None]:
        """(valuation of x, valuation of y)."""
        return self.x.valuation(), self.y.valuation()

    def __eq__(self, other):
        if not isinstance(other, Branch):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return f"Branch(x={self.x!r}, y={self.y!r})"


def verify_branch(curve: PlaneCurve, branch: Branch):
    """s-order of f(x(s), y(s)) mod s**order; math.inf when it vanishes."""
    residual = curve.f.eval_series(branch.x, branch.y)
    v = residual.valuation()
    return math.inf if v is None else v


class Normalization:
    """A verified multi-branch parametrization of the curve at the origin.

    Construction checks that every branch lies on the curve to its full
    order and that no two branches coincide at the shared order.
    """

    __slots__ = ("curve", "branches")

    def __init__(self, curve: PlaneCurve, branches):
        branches = tuple(branches)
        if not branches:
            raise ValueError("normalization needs at least one branch")
        for k, b in enumerate(branches):
            r = verify_branch(curve, b)
            if r < b.order:
                raise ValueError(
                    f"branch {k} does not lie on the curve: residual order {r} < {b.order}"
                )
        for i in range(len(branches)):
            for j in range(i + 1, len(branches)):
                bi, bj = branches[i], branches[j]
                n = min(bi.order, bj.order)
                if (bi.x.truncate(n) == bj.x.truncate(n)
                        and bi.y.truncate(n) == bj.y.truncate(n)):
                    raise ValueError(f"branches {i} and {j} coincide mod s^{n}")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "branches", branches)

    def __setattr__(self, name, value):
        raise AttributeError("Normalization is immutable")

    @property
    def order(self) -> int:
        return min(b.order for b in self.branches)

    def __repr__(self):
        return f"Normalization({len(self.branches)} branches, order {self.order})"


# ---------------------------------------------------------------------------
# Newton-polygon expansion
# ---------------------------------------------------------------------------


def _shift_exponents(f: Polynomial2, da: int, db: int) -> Polynomial2:
    return Polynomial2({(a - da, b - db): c for (a, b), c in f.terms.items()})


def _newton_edges(f: Polynomial2):
    """Negative-slope edges of the Newton polygon of f, walked from the
    leftmost support column down to j = 0.  Each entry is
    (p, q, points_on_edge, (start, end)) with the expansion exponent
    gamma = p/q in lowest terms."""
    pts = list(f.terms.keys())
    i_min = min(i for (i, _) in pts)
    j_bottom = min(j for (_, j) in pts)
    cur = (i_min, min(j for (i, j) in pts if i == i_min))
    edges = []
    while cur[1] > j_bottom:
        best = None
        for (i, j) in pts:
            if i > cur[0] and j < cur[1]:
                if best is None:
                    best = (i, j)
                    continue
                # steeper drop first; exact integer cross-comparison
                lhs = (cur[1] - j) * (best[0] - cur[0])
                rhs = (cur[1] - best[1]) * (i - cur[0])
                if lhs > rhs or (lhs == rhs and i > best[0]):
                    best = (i, j)
        if best is None:
            break
        di, dj = best[0] - cur[0], cur[1] - best[1]
        g = gcd(di, dj)
        p, q = di // g, dj // g
        on_edge = sorted(
            (
                (i, j)
                for (i, j) in pts
                if cur[0] <= i <= best[0] and (cur[1] - j) * di == (i - cur[0]) * dj
            ),
            key=lambda ij: ij[1],
        )
        edges.append((p, q, on_edge, (cur, best)))
        cur = best
    return edges


def _edge_characteristic(f: Polynomial2, edge_points) -> list[GaussianRational]:
    j_min = edge_points[0][1]
    j_max = edge_points[-1][1]
    coeffs = [GQ_ZERO] * (j_max - j_min + 1)
    for (i, j) in edge_points:
        coeffs[j - j_min] = f.coefficient(i, j)
    return coeffs


def _edge_substitute(f: Polynomial2, q: int, p: int, c: GaussianRational) -> Polynomial2:
    """f(x**q, x**p * (c + y)), divided by the largest possible power of x."""
    v = min(q * a + p * b for (a, b) in f.terms)
    max_b = max(b for (_, b) in f.terms)
    powers = [Polynomial2.constant(GQ_ONE)]
    base = Polynomial2({(0, 0): c, (0, 1): GQ_ONE})
    for _ in range(max_b):
        powers.append(powers[-1] * base)
    acc = Polynomial2.zero()
    for (a, b), coeff in f.terms.items():
        shift = q * a + p * b - v
        acc = acc + powers[b].scale(coeff) * Polynomial2.monomial(GQ_ONE, shift, 0)
    return acc


def _hensel_series(f: Polynomial2, order: int) -> TruncatedSeries:
    """The unique series y(x) with y(0) = 0 and f(x, y(x)) = 0 mod x**order,
    assuming df/dy is a unit at the origin.  Newton iteration, doubling the
    working precision each round."""
    fy = f.partial("y")
    if not fy.constant_term():
        raise ValueError("Hensel step requires a simple root")
    cur = TruncatedSeries.zero(1)
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        cur = TruncatedSeries(list(cur.coeffs), prec)
        x_id = TruncatedSeries.identity(prec)
        val = f.eval_series(x_id, cur)
        dval = fy.eval_series(x_id, cur)
        cur = cur - val * dval.inverse()
    return cur


_UNITS = (
    GaussianRational(1),
    GaussianRational(-1),
    GaussianRational(0, 1),
    GaussianRational(0, -1),
)


def _gq_power(z: GaussianRational, k: int) -> GaussianRational:
    if k < 0:
        return GQ_ONE / _gq_power(z, -k)
    out = GQ_ONE
    base = z
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def _dedupe_roots(roots, q: int, p: int):
    """Drop characteristic roots that parametrize the same branch: c and
    u**p * c for u a Gaussian-rational q-th root of unity."""
    units = [u for u in _UNITS if _gq_power(u, q) == GQ_ONE]
    kept = []
    seen: set[GaussianRational] = set()
    for c, mult in roots:
        if c in seen:
            continue
        for u in units:
            seen.add(_gq_power(u, p) * c)
        kept.append((c, mult))
    return kept


def _expansions(f: Polynomial2, order: int, depth: int = 0):
    """Solution series of f(x, y) = 0 through the origin with coefficients in
    Q(i), as pairs (Q, Y) meaning x = t**Q, y = Y(t) mod t**order."""
    if depth > 64:
        raise RuntimeError("Newton-polygon recursion did not terminate; is f square-free?")
    out = []
    b_min = min(b for (_, b) in f.terms)
    if b_min > 0:
        out.append((1, TruncatedSeries.zero(order)))
        f = _shift_exponents(f, 0, b_min)
        if f.constant_term():
            return out
    for (p, q, edge_points, edge) in _newton_edges(f):
        char = _edge_characteristic(f, edge_points)
        roots = [(c, m) for (c, m) in roots_with_multiplicity(char) if c]
        if not roots:
            raise IrrationalLeadingCoefficient(edge)
        for c, _mult in _dedupe_roots(roots, q, p):
            f1 = _edge_substitute(f, q, p, c)
            if f1.partial("y").constant_term():
                tails = [(1, _hensel_series(f1, order))]
            else:
                tails = _expansions(f1, order, depth + 1)
            for (q1, y1) in tails:
                head = TruncatedSeries.monomial(GQ_ONE, p * q1, order)
                y = head * (TruncatedSeries.constant(c, order) + y1)
                out.append((q * q1, y))
    return out


def newton_puiseux(curve: PlaneCurve, order: int = DEFAULT_ORDER) -> Normalization:
    """All branches at the origin to the given order, within the supported
    fragment (Gaussian-rational characteristic roots).

    The caller asserts that f is square-free.  A repeated factor degrades
    only the completeness of the returned set; every returned branch is
    verified against the curve.
    """
    f = curve.f
    branches: list[Branch] = []
    a_min = min(a for (a, _) in f.terms)
    if a_min > 0:
        branches.append(Branch(TruncatedSeries.zero(order), TruncatedSeries.identity(order)))
        f = _shift_exponents(f, a_min, 0)
    if not f.constant_term():
        for (big_q, y_series) in _expansions(f, order):
            if big_q >= order:
                raise ValueError(f"order {order} too small for a branch with x = s^{big_q}")
            x_series = TruncatedSeries.monomial(GQ_ONE, big_q, order)
            branches.append(Branch(x_series, y_series))
    deduped: list[Branch] = []
    for b in branches:
        if b not in deduped:
            deduped.append(b)
    return Normalization(curve, deduped)


def make_line_union(slopes, order: int = DEFAULT_ORDER) -> tuple[PlaneCurve, Normalization]:
    """The union of lines b*x - a*y = 0 for directions (a, b), with its
    tautological normalization: branch j is s -> (a_j*s, b_j*s)."""
    dirs = []
    for (a, b) in slopes:
        a = a if isinstance(a, GaussianRational) else GaussianRational(a)
        b = b if isinstance(b, GaussianRational) else GaussianRational(b)
        if not a and not b:
            raise ValueError("direction (0, 0) is not a line")
        dirs.append((a, b))
    if not dirs:
        raise ValueError("need at least one line")
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            ai, bi = dirs[i]
            aj, bj = dirs[j]
            if ai * bj == aj * bi:
                raise DuplicateDirection(f"directions {i} and {j} are proportional")
    f = Polynomial2.constant(GQ_ONE)
    for (a, b) in dirs:
        f = f * Polynomial2({(1, 0): b, (0, 1): -a})
    curve = PlaneCurve(f)
    branches = [
        Branch(
            TruncatedSeries.monomial(a, 1, order),
            TruncatedSeries.monomial(b, 1, order),
        )
        for (a, b) in dirs
    ]
    return curve, Normalization(curve, branches)


# ---------------------------------------------------------------------------
# Branch-image comparison
# ---------------------------------------------------------------------------


def branches_equivalent(b1: Branch, b2: Branch) -> bool:
    """Whether two branches have the same image: b1 equals b2 composed with
    some reparametrization s -> lambda*s + O(s**2), at the shared order."""
    n = min(b1.order, b2.order)
    if b1.orders() != b2.orders():
        return False
    pair1 = (b1.x.truncate(n), b1.y.truncate(n))
    pair2 = (b2.x.truncate(n), b2.y.truncate(n))
    vals = b1.orders()
    for lam in _reparam_scalars(pair1, pair2, vals):
        sigma = _solve_reparam(pair1, pair2, vals, lam, n)
        if sigma is None:
            continue
        if all(
            (s1 - s2.compose(sigma)).is_zero()
            for (s1, s2) in zip(pair1, pair2)
        ):
            return True
    return False


def _reparam_scalars(pair1, pair2, vals):
    """Candidate leading coefficients lambda with lambda**v matching the
    leading-term ratio on every component."""
    ratios = []
    for (s1, s2, v) in zip(pair1, pair2, vals):
        if v is not None:
            ratios.append((v, s1.coeffs[v] / s2.coeffs[v]))
    if not ratios:
        return []
    if len(ratios) == 2:
        (vx, rx), (vy, ry) = ratios
        g, u, w = _ext_gcd(vx, vy)
        if g == 1:
            lam = _gq_power(rx, u) * _gq_power(ry, w)
            if _gq_power(lam, vx) == rx and _gq_power(lam, vy) == ry:
                return [lam]
            return []
        # fall through to root search on one component, check the other later
    v, r = ratios[0]
    poly = [GQ_ZERO] * (v + 1)
    poly[0] = -r
    poly[v] = GQ_ONE
    cands = gaussian_rational_roots(poly)
    out = []
    for lam in cands:
        if all(_gq_power(lam, vv) == rr for (vv, rr) in ratios):
            out.append(lam)
    return out


def _solve_reparam(pair1, pair2, vals, lam, n):
    """Build sigma = lam*s + ... matching the lowest-valuation component;
    returns the series or None when no adjustment can work."""
    pivot = 0 if vals[0] is not None and (vals[1] is None or vals[0] <= vals[1]) else 1
    s1, s2 = pair1[pivot], pair2[pivot]
    m = vals[pivot]
    lead = s2.coeffs[m]
    denom = GaussianRational(m) * lead * _gq_power(lam, m - 1)
    sigma = [GQ_ZERO, lam] + [GQ_ZERO] * max(n - 2, 0)
    for k in range(2, n - m + 1):
        sig = TruncatedSeries(sigma[:n], n)
        diff = s1 - s2.compose(sig)
        val = diff.valuation()
        if val is None or val >= m + k:
            continue
        if val < m + k - 1:
            return None
        sigma[k] = diff.coeffs[m + k - 1] / denom
    return TruncatedSeries(sigma[:n], n)


def _ext_gcd(a: int, b: int):
    if b == 0:
        return a, 1, 0
    g, u, w = _ext_gcd(b, a % b)
    return g, w, u - (a // b) * w
