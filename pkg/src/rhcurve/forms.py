"""Differential forms on a singular plane curve.

Forms are stored as ambient polynomial representatives and never normalized:
a one-form a*dx + b*dy is considered modulo the relation submodule spanned
by f*dx, f*dy and df; a two-form c*dx^dy modulo the ideal (f, fx, fy).
All semantic questions (is this zero? closed? torsion?) route through
certified membership tests or exact branch pullbacks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import Branch, Normalization, PlaneCurve
from .membership import (
    MembershipVerdict,
    ideal_membership,
    oneform_relation_membership,
)
from .polynomials import Polynomial2
from .series import TruncatedSeries

__all__ = [
    "CurveOneForm",
    "CurveTwoForm",
    "TorsionVerdict",
    "d_function",
    "d_oneform",
    "wedge",
    "is_closed",
    "is_zero_oneform",
    "two_form_is_zero",
    "is_torsion",
    "pullback_oneform",
]


@dataclass(frozen=True)
class CurveOneForm:
    """a*dx + b*dy as an ambient representative on the given curve."""

    a: Polynomial2
    b: Polynomial2
    curve: PlaneCurve

    def __add__(self, other: "CurveOneForm") -> "CurveOneForm":
        self._same_curve(other)
        return CurveOneForm(self.a + other.a, self.b + other.b, self.curve)

    def __sub__(self, other: "CurveOneForm") -> "CurveOneForm":
        self._same_curve(other)
        return CurveOneForm(self.a - other.a, self.b - other.b, self.curve)

    def __neg__(self) -> "CurveOneForm":
        return CurveOneForm(-self.a, -self.b, self.curve)

    def scale_poly(self, g: Polynomial2) -> "CurveOneForm":
        return CurveOneForm(g * self.a, g * self.b, self.curve)

    def _same_curve(self, other: "CurveOneForm"):
        if self.curve != other.curve:
            raise ValueError("forms live on different curves")


@dataclass(frozen=True)
class CurveTwoForm:
    """c*dx^dy as an ambient representative on the given curve."""

    c: Polynomial2
    curve: PlaneCurve


@dataclass(frozen=True)
class TorsionVerdict:
    """Outcome of the branch-pullback torsion test.

    The verdict is conditional on the supplied normalization covering all
    branches; residual_orders lists the s-valuation of each pullback (None
    meaning it vanished to the checked order).
    """

    torsion: bool
    order: int
    residual_orders: tuple

    def __bool__(self) -> bool:
        return self.torsion


def d_function(g: Polynomial2, curve: PlaneCurve) -> CurveOneForm:
    """Exterior derivative of an ambient polynomial: gx*dx + gy*dy."""
    return CurveOneForm(g.partial("x"), g.partial("y"), curve)


def d_oneform(w: CurveOneForm) -> CurveTwoForm:
    """d(a*dx + b*dy) = (bx - ay) dx^dy."""
    return CurveTwoForm(w.b.partial("x") - w.a.partial("y"), w.curve)


def wedge(w1: CurveOneForm, w2: CurveOneForm) -> CurveTwoForm:
    """(a1*dx + b1*dy) ^ (a2*dx + b2*dy) = (a1*b2 - b1*a2) dx^dy."""
    w1._same_curve(w2)
    return CurveTwoForm(w1.a * w2.b - w1.b * w2.a, w1.curve)


def two_form_is_zero(w: CurveTwoForm, degree_cap: int) -> MembershipVerdict:
    """Membership of the coefficient in (f, fx, fy) at the cap: the two-form
    relation submodule is f*Omega^2 + df^Omega^1."""
    c = w.curve
    return ideal_membership(w.c, [c.f, c.fx, c.fy], degree_cap)


def is_closed(w: CurveOneForm, degree_cap: int) -> MembershipVerdict:
    """Whether dw vanishes as a two-form on the curve, up to the cap."""
    return two_form_is_zero(d_oneform(w), degree_cap)


def is_zero_oneform(w: CurveOneForm, degree_cap: int) -> MembershipVerdict:
    """Membership of (a, b) in span{f*dx, f*dy, df} with polynomial
    coefficients of degree <= cap.  Infeasible certifies the form is a
    nonzero element of the curve's module of one-forms at this cap."""
    return oneform_relation_membership(w.a, w.b, w.curve, degree_cap, with_gradient=False)


def pullback_oneform(w: CurveOneForm, branch: Branch) -> TruncatedSeries:
    """Coefficient M(s) of the pullback M(s)*ds along the branch:
    a(x(s), y(s))*x'(s) + b(x(s), y(s))*y'(s), known mod s**(order-1)."""
    xs, ys = branch.x, branch.y
    return w.a.eval_series(xs, ys) * xs.derivative() + w.b.eval_series(xs, ys) * ys.derivative()


def is_torsion(w: CurveOneForm, nz: Normalization) -> TorsionVerdict:
    """True iff the pullback of w vanishes mod s**(N-1) on every branch."""
    residuals = []
    ok = True
    order = min(b.order for b in nz.branches) - 1
    for b in nz.branches:
        pull = pullback_oneform(w, b).truncate(order)
        v = pull.valuation()
        residuals.append(v)
        if v is not None:
            ok = False
    return TorsionVerdict(ok, order, tuple(residuals))
