"""Certified membership tests in truncated polynomial and series modules.

Every operation reduces to one exact linear solve over the Gaussian
rationals and returns either an explicit solution (which recombines to the
target, exactly) or an infeasibility witness: a linear functional over the
compared coefficient space that annihilates every generator column and
pairs nonzero with the target.  Witnesses are keyed by human-readable row
labels so certificates survive serialization.

Degree caps are explicit and their meaning differs per operation:
subalgebra_membership is complete at its cap (monomials of degree >= N
pull back to zero mod s**N), the polynomial-side tests decide exact
polynomial solvability up to the cap and are certificate-asymmetric
beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .curves import Normalization, PlaneCurve
from .linalg import solve_certified
from .polynomials import Polynomial2, format_monomial
from .rationals import GQ_ONE, GQ_ZERO, GaussianRational
from .series import TruncatedSeries

__all__ = [
    "FEASIBLE",
    "INFEASIBLE",
    "STRONG",
    "NOT_STRONG",
    "MembershipVerdict",
    "StrongHolomorphyVerdict",
    "OrderMismatch",
    "ideal_membership",
    "verify_ideal_membership",
    "subalgebra_membership",
    "verify_strong_verdict",
    "vector_field_equation_solve",
    "exactness_solve",
    "oneform_relation_membership",
    "branch_monomial_pullbacks",
]

FEASIBLE = "Feasible"
INFEASIBLE = "Infeasible"

STRONG = "StrongUpToOrder"
NOT_STRONG = "CertifiedNotStrong"


class OrderMismatch(ValueError):
    """Targets and branches disagree on the truncation order."""


@dataclass(frozen=True)
class MembershipVerdict:
    """Feasible with a solution, or Infeasible with a checkable witness."""

    status: str
    solution: Optional[dict] = None
    witness: Optional[dict[str, GaussianRational]] = None
    meta: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


@dataclass(frozen=True)
class StrongHolomorphyVerdict:
    """Whether per-branch series targets are simultaneous restrictions of one
    ambient polynomial, up to the shared truncation order."""

    status: str
    g: Optional[Polynomial2] = None
    witness: Optional[dict[str, GaussianRational]] = None

    @property
    def strong(self) -> bool:
        return self.status == STRONG


def _monomials_up_to(d: int) -> list[tuple[int, int]]:
    out = []
    for total in range(d + 1):
        for a in range(total + 1):
            out.append((a, total - a))
    return out


def _poly_from_columns(values: dict[int, GaussianRational], columns, offset: int, count: int) -> Polynomial2:
    terms = {}
    for idx in range(offset, offset + count):
        v = values.get(idx)
        if v:
            terms[columns[idx - offset]] = v
    return Polynomial2(terms)


# ---------------------------------------------------------------------------
# ideal membership
# ---------------------------------------------------------------------------


def ideal_membership(target: Polynomial2, generators: list[Polynomial2], degree_cap: int) -> MembershipVerdict:
    """Decide target = sum(g_i * h_i) with deg(h_i) <= degree_cap, comparing
    every monomial that can occur on either side.  Feasible returns the h_i;
    Infeasible certifies there is no polynomial combination at this cap."""
    if degree_cap < 0:
        raise ValueError("degree cap must be nonnegative")
    gen_deg = max((g.degree() for g in generators if not g.is_zero()), default=0)
    row_deg = max(int(gen_deg) + degree_cap if generators else 0,
                  int(target.degree()) if not target.is_zero() else 0)
    row_monos = _monomials_up_to(row_deg)
    row_index = {m: i for i, m in enumerate(row_monos)}
    col_monos = _monomials_up_to(degree_cap)
    rows: list[dict[int, GaussianRational]] = [dict() for _ in row_monos]
    ncols = len(generators) * len(col_monos)
    for gi, g in enumerate(generators):
        for ci, (a, b) in enumerate(col_monos):
            col = gi * len(col_monos) + ci
            for (ga, gb), coeff in g.terms.items():
                key = (ga + a, gb + b)
                if key in row_index:
                    rows[row_index[key]][col] = coeff
    rhs = [target.coefficient(a, b) for (a, b) in row_monos]
    result = solve_certified(rows, rhs, ncols)
    meta = {"degree_cap": degree_cap}
    if result.feasible:
        hs = [
            _poly_from_columns(result.solution or {}, col_monos, gi * len(col_monos), len(col_monos))
            for gi in range(len(generators))
        ]
        return MembershipVerdict(FEASIBLE, solution={"multipliers": hs}, meta=meta)
    witness = {format_monomial(*row_monos[i]): v for i, v in (result.witness or {}).items()}
    return MembershipVerdict(INFEASIBLE, witness=witness, meta=meta)


def verify_ideal_membership(target: Polynomial2, generators: list[Polynomial2], verdict: MembershipVerdict) -> bool:
    """Re-check an ideal_membership verdict without trusting the solver."""
    from .polynomials import parse_monomial

    if verdict.feasible:
        hs = verdict.solution["multipliers"]
        acc = Polynomial2.zero()
        for g, h in zip(generators, hs):
            acc = acc + g * h
        return acc == target
    w = {parse_monomial(label): weight for label, weight in (verdict.witness or {}).items()}
    pairing = GQ_ZERO
    for mono, weight in w.items():
        pairing = pairing + weight * target.coefficient(*mono)
    if not pairing:
        return False
    cap = verdict.meta.get("degree_cap", 0)
    for g in generators:
        for (a, b) in _monomials_up_to(cap):
            shifted = g * Polynomial2.monomial(GQ_ONE, a, b)
            acc = GQ_ZERO
            for mono, weight in w.items():
                acc = acc + weight * shifted.coefficient(*mono)
            if acc:
                return False
    return True


# ---------------------------------------------------------------------------
# subalgebra membership (strong holomorphy up to order)
# ---------------------------------------------------------------------------


def branch_monomial_pullbacks(nz: Normalization, order: int):
    """Pullbacks (x**a * y**b) o branch_j mod s**order for every monomial of
    degree <= order with a not-identically-zero pullback.  Degree `order` is
    exhaustive: both coordinates vanish at s = 0, so higher monomials pull
    back to zero mod s**order on every branch."""
    columns: list[tuple[int, int]] = []
    tables: list[list[TruncatedSeries]] = [[] for _ in nz.branches]
    x_pows = []
    y_pows = []
    for b in nz.branches:
        xp = [TruncatedSeries.one(order)]
        yp = [TruncatedSeries.one(order)]
        for _ in range(order):
            xp.append(xp[-1] * b.x.truncate(order))
            yp.append(yp[-1] * b.y.truncate(order))
        x_pows.append(xp)
        y_pows.append(yp)
    for (a, bb) in _monomials_up_to(order):
        pulls = [x_pows[j][a] * y_pows[j][bb] for j in range(len(nz.branches))]
        if any(not p.is_zero() for p in pulls):
            columns.append((a, bb))
            for j, p in enumerate(pulls):
                tables[j].append(p)
    return columns, tables


def subalgebra_membership(targets: list[TruncatedSeries], nz: Normalization, order: int) -> StrongHolomorphyVerdict:
    """Search one polynomial g of degree <= order with g o branch_j equal to
    target_j mod s**order simultaneously for every branch.

    A negative verdict is complete: no ambient analytic function restricts
    to these targets mod s**order.  A positive verdict is exact only modulo
    s**order.
    """
    if len(targets) != len(nz.branches):
        raise OrderMismatch(
            f"{len(targets)} targets for {len(nz.branches)} branches"
        )
    for t in targets:
        if t.order != order:
            raise OrderMismatch(f"target order {t.order} differs from requested {order}")
    for b in nz.branches:
        if b.order < order:
            raise OrderMismatch(f"branch order {b.order} below requested {order}")
    columns, tables = branch_monomial_pullbacks(nz, order)
    nbranch = len(nz.branches)
    rows: list[dict[int, GaussianRational]] = [dict() for _ in range(nbranch * order)]
    for col, _ in enumerate(columns):
        for j in range(nbranch):
            series = tables[j][col]
            for k in range(order):
                if series.coeffs[k]:
                    rows[j * order + k][col] = series.coeffs[k]
    rhs = []
    for j in range(nbranch):
        rhs.extend(targets[j].coeffs[k] for k in range(order))
    result = solve_certified(rows, rhs, len(columns))
    if result.feasible:
        g = _poly_from_columns(result.solution or {}, columns, 0, len(columns))
        return StrongHolomorphyVerdict(STRONG, g=g)
    witness = {}
    for i, v in (result.witness or {}).items():
        j, k = divmod(i, order)
        witness[f"b{j}:s^{k}"] = v
    return StrongHolomorphyVerdict(NOT_STRONG, witness=witness)


def verify_strong_verdict(targets, nz, order, verdict: StrongHolomorphyVerdict) -> bool:
    """Re-check a strong-holomorphy verdict from scratch."""
    if verdict.strong:
        for t, b in zip(targets, nz.branches):
            pull = verdict.g.eval_series(b.x.truncate(order), b.y.truncate(order))
            if not (pull - t).is_zero():
                return False
        return True
    w = verdict.witness or {}
    columns, tables = branch_monomial_pullbacks(nz, order)

    def weight_at(j, k):
        return w.get(f"b{j}:s^{k}", GQ_ZERO)

    for col in range(len(columns)):
        acc = GQ_ZERO
        for j in range(len(nz.branches)):
            series = tables[j][col]
            for k in range(order):
                if series.coeffs[k]:
                    acc = acc + weight_at(j, k) * series.coeffs[k]
        if acc:
            return False
    pairing = GQ_ZERO
    for j, t in enumerate(targets):
        for k in range(order):
            if t.coeffs[k]:
                pairing = pairing + weight_at(j, k) * t.coeffs[k]
    return bool(pairing)


# ---------------------------------------------------------------------------
# the divergence-form vector-field equation
# ---------------------------------------------------------------------------


def vector_field_equation_solve(
    curve: PlaneCurve,
    degree_cap: int,
    constraints: Optional[list[tuple[str, int, int]]] = None,
) -> MembershipVerdict:
    """Decide f = d(f*A)/dx + d(f*B)/dy by comparing homogeneous components,
    with polynomial unknowns A, B of degree <= degree_cap - 3.

    The compared degrees only involve unknown coefficients below the cap, so
    truncating any analytic solution solves this system: Infeasible
    certifies that no analytic solution exists near the origin.  The
    optional constraints force listed coefficients ("A"|"B", i, j) to zero.
    The verdict's meta carries the reduced augmented subsystem over the
    unconstrained degree-<=1 unknowns (and its determinant when square).
    """
    if degree_cap < 4:
        raise ValueError("degree cap must be at least 4")
    f = curve.f
    unknown_deg = degree_cap - 3
    d_min = min(a + b for (a, b) in f.terms)
    row_deg = unknown_deg + d_min - 1
    forced = set(constraints or [])
    unknowns: list[tuple[str, int, int]] = []
    for name in ("A", "B"):
        for (a, b) in _monomials_up_to(unknown_deg):
            if (name, a, b) not in forced:
                unknowns.append((name, a, b))
    col_index = {u: i for i, u in enumerate(unknowns)}
    row_monos = _monomials_up_to(row_deg)
    row_index = {m: i for i, m in enumerate(row_monos)}
    rows: list[dict[int, GaussianRational]] = [dict() for _ in row_monos]
    col_polys: list[Polynomial2] = []
    for (name, a, b) in unknowns:
        prod = f * Polynomial2.monomial(GQ_ONE, a, b)
        contrib = prod.partial("x") if name == "A" else prod.partial("y")
        col_polys.append(contrib)
        col = col_index[(name, a, b)]
        for (ma, mb), coeff in contrib.terms.items():
            key = (ma, mb)
            if key in row_index:
                rows[row_index[key]][col] = coeff
    rhs = [f.coefficient(a, b) for (a, b) in row_monos]
    result = solve_certified(rows, rhs, len(unknowns))

    meta = _reduced_subsystem(rows, rhs, unknowns, row_monos)
    if result.feasible:
        sol = result.solution or {}
        polys = {"A": {}, "B": {}}
        for (name, a, b), idx in col_index.items():
            v = sol.get(idx)
            if v:
                polys[name][(a, b)] = v
        return MembershipVerdict(
            FEASIBLE,
            solution={"A": Polynomial2(polys["A"]), "B": Polynomial2(polys["B"])},
            meta=meta,
        )
    witness = {format_monomial(*row_monos[i]): v for i, v in (result.witness or {}).items()}
    return MembershipVerdict(INFEASIBLE, witness=witness, meta=meta)


def _reduced_subsystem(rows, rhs, unknowns, row_monos) -> dict:
    """Rows touching only degree-<=1 unknowns, as an augmented matrix."""
    low_cols = [i for i, (_, a, b) in enumerate(unknowns) if a + b <= 1]
    low_set = set(low_cols)
    aug = []
    labels = []
    for r, row in enumerate(rows):
        if not row and not rhs[r]:
            continue
        if all(c in low_set for c in row):
            aug.append([row.get(c, GQ_ZERO) for c in low_cols] + [rhs[r]])
            labels.append(format_monomial(*row_monos[r]))
    det = None
    if aug and len(aug) == len(low_cols) + 1:
        from .linalg import determinant

        det = determinant([list(r) for r in aug])
    unknown_labels = []
    for i in low_cols:
        name, a, b = unknowns[i]
        unknown_labels.append(f"{name}:{format_monomial(a, b)}")
    return {
        "reduced_augmented": aug,
        "reduced_rows": labels,
        "reduced_unknowns": unknown_labels,
        "reduced_determinant": det,
    }


# ---------------------------------------------------------------------------
# relation-submodule membership for one-forms, with optional gradient block
# ---------------------------------------------------------------------------


def oneform_relation_membership(
    a: Polynomial2,
    b: Polynomial2,
    curve: PlaneCurve,
    degree_cap: int,
    with_gradient: bool,
) -> MembershipVerdict:
    """Decide (a, b) = dH + h*df + f*beta with polynomial data of degree <=
    degree_cap (the dH block only when with_gradient).  Solutions carry the
    pieces; witnesses are functionals over labeled rows "dx:<monomial>" and
    "dy:<monomial>".  The compared rows cover the full support of any
    candidate residual, so the verdict decides exact polynomial solvability
    at this cap."""
    if degree_cap < (1 if with_gradient else 0):
        raise ValueError("degree cap too small")
    f, fx, fy = curve.f, curve.fx, curve.fy
    row_deg = degree_cap + int(f.degree())
    for pol in (a, b):
        if not pol.is_zero():
            row_deg = max(row_deg, int(pol.degree()))
    row_monos = _monomials_up_to(row_deg)
    row_index = {}
    for i, m in enumerate(row_monos):
        row_index[("dx", m)] = i
        row_index[("dy", m)] = i + len(row_monos)
    nrows = 2 * len(row_monos)
    rows: list[dict[int, GaussianRational]] = [dict() for _ in range(nrows)]
    col_monos = _monomials_up_to(degree_cap)
    blocks: list[tuple[str, list[tuple[int, int]]]] = []
    if with_gradient:
        blocks.append(("H", [m for m in col_monos if m != (0, 0)]))
    blocks.append(("h", col_monos))
    blocks.append(("beta_dx", col_monos))
    blocks.append(("beta_dy", col_monos))

    def add_entries(col, poly, component):
        for (ma, mb), coeff in poly.terms.items():
            idx = row_index.get((component, (ma, mb)))
            if idx is not None:
                rows[idx][col] = rows[idx].get(col, GQ_ZERO) + coeff

    col = 0
    offsets = {}
    for name, monos in blocks:
        offsets[name] = (col, monos)
        for (ca, cb) in monos:
            mono = Polynomial2.monomial(GQ_ONE, ca, cb)
            if name == "H":
                add_entries(col, mono.partial("x"), "dx")
                add_entries(col, mono.partial("y"), "dy")
            elif name == "h":
                add_entries(col, fx * mono, "dx")
                add_entries(col, fy * mono, "dy")
            elif name == "beta_dx":
                add_entries(col, f * mono, "dx")
            else:
                add_entries(col, f * mono, "dy")
            col += 1
    rhs = [a.coefficient(*m) for m in row_monos] + [b.coefficient(*m) for m in row_monos]
    result = solve_certified(rows, rhs, col)
    if result.feasible:
        sol = result.solution or {}
        pieces = {}
        for name, (offset, monos) in offsets.items():
            pieces[name] = _poly_from_columns(sol, monos, offset, len(monos))
        return MembershipVerdict(FEASIBLE, solution=pieces)
    witness = {}
    for i, v in (result.witness or {}).items():
        comp = "dx" if i < len(row_monos) else "dy"
        mono = row_monos[i % len(row_monos)]
        witness[f"{comp}:{format_monomial(*mono)}"] = v
    return MembershipVerdict(INFEASIBLE, witness=witness)


def exactness_solve(omega, curve: PlaneCurve, degree_cap: int) -> MembershipVerdict:
    """Decide omega = dH + h*df + f*beta with polynomial unknowns of degree
    <= degree_cap; omega is any object with .a and .b polynomial components
    (a one-form a*dx + b*dy).  Infeasible rules out every polynomial
    primitive at this cap; the analytic-level obstruction for the bundled
    example flows through vector_field_equation_solve instead."""
    return oneform_relation_membership(omega.a, omega.b, curve, degree_cap, with_gradient=True)
