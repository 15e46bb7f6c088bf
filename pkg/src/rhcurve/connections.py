"""Connections on free modules over a singular plane curve.

The operator is nabla = d + A for an r x r matrix A of one-forms.  Parallel
frames are solved branch by branch as exact series ODEs; gluing them with a
common value at the singular point gives the continuous weakly holomorphic
frame, whose entries are then tested for strong holomorphy (simultaneous
polynomial matching along all branches).

Classification of a flat rank-1 connection hinges on the form
omega = A - dH, where H is a polynomial whose differential matches the
pullback of A on every branch.  If omega is zero in the curve's module of
one-forms, the adjusted section exp(-(H + correction)) is a strongly
holomorphic generator of ker(nabla) and the Riemann-Hilbert picture holds
up to the order; if omega is a certified-nonzero torsion form, the section
exp(-H) witnesses non-tameness and the kernel drops rank at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .curves import Branch, Normalization, PlaneCurve
from .forms import (
    CurveOneForm,
    CurveTwoForm,
    TorsionVerdict,
    d_function,
    d_oneform,
    is_torsion,
    is_zero_oneform,
    pullback_oneform,
    two_form_is_zero,
    wedge,
)
from .linalg import determinant
from .membership import (
    MembershipVerdict,
    StrongHolomorphyVerdict,
    oneform_relation_membership,
    subalgebra_membership,
)
from .polynomials import Polynomial2
from .rationals import GQ_ONE, GQ_ZERO, GaussianRational
from .series import TruncatedSeries

__all__ = [
    "Connection",
    "BranchFrame",
    "CurveFrame",
    "FrameStrongVerdict",
    "Classification",
    "ClassificationStatus",
    "NonTameWitness",
    "SingularInitialValue",
    "RankNotSupported",
    "is_flat",
    "solve_frame_on_branch",
    "build_continuous_frame",
    "branch_matching_potential",
    "classify",
    "parallel_section_at_origin",
]


class SingularInitialValue(ValueError):
    """Frame solve started from a non-invertible initial matrix."""


class RankNotSupported(ValueError):
    """Operation only implemented for rank-1 connections."""


class Connection:
    """nabla = d + A on the free module of rank r over the curve."""

    __slots__ = ("rank", "A", "curve")

    def __init__(self, A: list[list[CurveOneForm]], curve: PlaneCurve):
        r = len(A)
        if r < 1 or any(len(row) != r for row in A):
            raise ValueError("connection matrix must be square and nonempty")
        for row in A:
            for entry in row:
                if entry.curve != curve:
                    raise ValueError("matrix entry lives on a different curve")
        object.__setattr__(self, "rank", r)
        object.__setattr__(self, "A", tuple(tuple(row) for row in A))
        object.__setattr__(self, "curve", curve)

    def __setattr__(self, name, value):
        raise AttributeError("Connection is immutable")

    @staticmethod
    def rank_one(form: CurveOneForm) -> "Connection":
        return Connection([[form]], form.curve)


@dataclass(frozen=True)
class BranchFrame:
    """Exact parallel frame S on one branch: S' + M*S = 0 mod s**(N-1) and
    S(0) = S0, where M*ds is the pullback of the connection matrix."""

    branch_index: int
    S: tuple          # r x r of TruncatedSeries, order N
    S0: tuple         # r x r of GaussianRational

    @property
    def rank(self) -> int:
        return len(self.S)


@dataclass(frozen=True)
class FrameStrongVerdict:
    """Aggregated strong-holomorphy verdict over all r**2 frame entries."""

    strong: bool
    entries: tuple    # r x r of StrongHolomorphyVerdict
    g: Optional[tuple] = None   # r x r of Polynomial2 when strong


@dataclass(frozen=True)
class CurveFrame:
    """One BranchFrame per branch, all sharing the same value at s = 0,
    which is what makes the frame continuous across the singular point."""

    frames: tuple
    strong: FrameStrongVerdict


class ClassificationStatus(str, Enum):
    FLATNESS_FAILED = "FlatnessFailed"
    STRONG_FRAME = "StrongFrame"
    NON_TAME = "NonTame"
    NO_STRONG_FRAME = "NoStrongFrameUpToOrder"


@dataclass(frozen=True)
class NonTameWitness:
    """Certificate of non-tameness: exp(-potential) is strongly holomorphic
    and its covariant derivative equals exp(-potential) * torsion_form, a
    form whose branch pullbacks vanish but which is certified nonzero."""

    potential: Polynomial2
    torsion_form: CurveOneForm
    torsion: TorsionVerdict
    nonzero: MembershipVerdict


@dataclass(frozen=True)
class Classification:
    status: ClassificationStatus
    flatness: tuple
    frame: Optional[CurveFrame] = None
    witness: Optional[NonTameWitness] = None
    order: int = 0
    degree_cap: int = 0


# ---------------------------------------------------------------------------
# flatness
# ---------------------------------------------------------------------------


def is_flat(conn: Connection, degree_cap: int):
    """Entrywise verdicts for dA + A^A vanishing as a two-form on the curve;
    Infeasible in any entry certifies the connection is not flat."""
    r = conn.rank
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = d_oneform(conn.A[i][j]).c
            for k in range(r):
                acc = acc + wedge(conn.A[i][k], conn.A[k][j]).c
            row.append(two_form_is_zero(CurveTwoForm(acc, conn.curve), degree_cap))
        out.append(tuple(row))
    return tuple(out)


def _all_feasible(verdicts) -> bool:
    return all(v.feasible for row in verdicts for v in row)


# ---------------------------------------------------------------------------
# parallel frames on branches
# ---------------------------------------------------------------------------


def _identity_matrix(r: int):
    return tuple(
        tuple(GQ_ONE if i == j else GQ_ZERO for j in range(r)) for i in range(r)
    )


def solve_frame_on_branch(conn: Connection, branch: Branch, S0, order: int,
                          branch_index: int = 0) -> BranchFrame:
    """Solve S' = -M*S with S(0) = S0 by the exact coefficient recursion
    S_{n+1} = -(sum_{i+j=n} M_i * S_j) / (n+1)."""
    r = conn.rank
    S0 = tuple(tuple(row) for row in S0)
    if not determinant([list(row) for row in S0]):
        raise SingularInitialValue("initial frame value has determinant zero")
    if branch.order < order:
        raise ValueError(f"branch order {branch.order} below requested {order}")
    m_order = order - 1
    M = [
        [pullback_oneform(conn.A[i][j], branch).truncate(m_order) for j in range(r)]
        for i in range(r)
    ]
    # coefficient tables: coeffs[n][i][j]
    coeffs = [[[S0[i][j] for j in range(r)] for i in range(r)]]
    for n in range(order - 1):
        nxt = [[GQ_ZERO] * r for _ in range(r)]
        for m in range(min(n, m_order - 1) + 1):
            for i in range(r):
                for k in range(r):
                    mik = M[i][k].coeffs[m]
                    if not mik:
                        continue
                    for j in range(r):
                        s = coeffs[n - m][k][j]
                        if s:
                            nxt[i][j] = nxt[i][j] + mik * s
        inv = GaussianRational(1, 0) / GaussianRational(n + 1)
        coeffs.append([[-(nxt[i][j]) * inv for j in range(r)] for i in range(r)])
    S = tuple(
        tuple(
            TruncatedSeries([coeffs[n][i][j] for n in range(order)], order)
            for j in range(r)
        )
        for i in range(r)
    )
    frame = BranchFrame(branch_index=branch_index, S=S, S0=S0)
    _check_frame_residual(frame, M, order)
    return frame


def _check_frame_residual(frame: BranchFrame, M, order: int):
    r = frame.rank
    for i in range(r):
        for j in range(r):
            acc = frame.S[i][j].derivative()
            for k in range(r):
                acc = acc + M[i][k] * frame.S[k][j]
            if not acc.truncate(order - 1).is_zero():
                raise AssertionError("frame residual check failed; solver bug")


def build_continuous_frame(conn: Connection, nz: Normalization, order: int) -> CurveFrame:
    """Solve on every branch with the same initial value (the identity) and
    test each of the r**2 entry tuples for strong holomorphy."""
    r = conn.rank
    S0 = _identity_matrix(r)
    frames = tuple(
        solve_frame_on_branch(conn, b, S0, order, branch_index=k)
        for k, b in enumerate(nz.branches)
    )
    entries = []
    gs = []
    strong = True
    for i in range(r):
        ent_row = []
        g_row = []
        for j in range(r):
            targets = [fr.S[i][j] for fr in frames]
            verdict = subalgebra_membership(targets, nz, order)
            ent_row.append(verdict)
            g_row.append(verdict.g)
            strong = strong and verdict.strong
        entries.append(tuple(ent_row))
        gs.append(tuple(g_row))
    verdict = FrameStrongVerdict(
        strong=strong,
        entries=tuple(entries),
        g=tuple(gs) if strong else None,
    )
    return CurveFrame(frames=frames, strong=verdict)


# ---------------------------------------------------------------------------
# rank-1 classification machinery
# ---------------------------------------------------------------------------


def branch_matching_potential(conn: Connection, nz: Normalization, order: int):
    """Search a polynomial H with H(0) = 0 whose differential pulls back to
    the pullback of the connection form on every branch mod s**(order-1);
    equivalently H o branch = integral of the pullback, mod s**order."""
    if conn.rank != 1:
        raise RankNotSupported("potential search is rank-1 only")
    targets = [
        pullback_oneform(conn.A[0][0], b).truncate(order - 1).integral(GQ_ZERO)
        for b in nz.branches
    ]
    verdict = subalgebra_membership(targets, nz, order)
    if verdict.strong:
        g = verdict.g
        if g.constant_term():
            g = g - Polynomial2.constant(g.constant_term())
        return g, verdict
    return None, verdict


def classify(conn: Connection, nz: Normalization, order: int, degree_cap: int) -> Classification:
    """Full pipeline: flatness, continuous frame, strong verdict, and for
    rank 1 the exactness/torsion dichotomy on omega = A - dH.

    omega zero in the module of one-forms means A = d(H + h*f) + f*beta', so
    exp(-(H + h*f)) is a strongly holomorphic parallel generator and the
    verdict is StrongFrame.  omega certified nonzero with vanishing branch
    pullbacks is a non-tameness witness and preempts StrongFrame even when
    the frame entries are strongly holomorphic: the kernel has no generator
    at the origin.
    """
    flat = is_flat(conn, degree_cap)
    if not _all_feasible(flat):
        return Classification(
            ClassificationStatus.FLATNESS_FAILED, flat, order=order, degree_cap=degree_cap
        )
    frame = build_continuous_frame(conn, nz, order)
    if conn.rank == 1:
        potential, _search = branch_matching_potential(conn, nz, order)
        if potential is not None:
            omega = conn.A[0][0] - d_function(potential, conn.curve)
            torsion = is_torsion(omega, nz)
            nonzero = is_zero_oneform(omega, degree_cap)
            if torsion.torsion and not nonzero.feasible:
                witness = NonTameWitness(
                    potential=potential,
                    torsion_form=omega,
                    torsion=torsion,
                    nonzero=nonzero,
                )
                return Classification(
                    ClassificationStatus.NON_TAME,
                    flat,
                    frame=frame,
                    witness=witness,
                    order=order,
                    degree_cap=degree_cap,
                )
    if frame.strong.strong:
        return Classification(
            ClassificationStatus.STRONG_FRAME, flat, frame=frame,
            order=order, degree_cap=degree_cap,
        )
    return Classification(
        ClassificationStatus.NO_STRONG_FRAME, flat, frame=frame,
        order=order, degree_cap=degree_cap,
    )


def parallel_section_at_origin(conn: Connection, degree_cap: int) -> MembershipVerdict:
    """Decide existence of a polynomial unit u, u(0) = 1, of degree <= cap
    with du + u*A zero in the curve's one-forms up to the cap.  Infeasible
    certifies that ker(nabla) has no generator of this shape at the origin
    (the kernel sheaf drops rank at 0)."""
    if conn.rank != 1:
        raise RankNotSupported("parallel-section search is rank-1 only")
    alpha = conn.A[0][0]
    curve = conn.curve
    from .membership import FEASIBLE, INFEASIBLE, _monomials_up_to, _poly_from_columns
    from .linalg import solve_certified
    from .polynomials import format_monomial

    f, fx, fy = curve.f, curve.fx, curve.fy
    d = degree_cap
    row_deg = d + int(f.degree())
    for pol in (alpha.a, alpha.b):
        if not pol.is_zero():
            row_deg = max(row_deg, int(pol.degree()), d + int(pol.degree()))
    row_monos = _monomials_up_to(row_deg)
    nrow = len(row_monos)
    row_index = {m: i for i, m in enumerate(row_monos)}
    rows: list[dict[int, GaussianRational]] = [dict() for _ in range(2 * nrow)]
    col_monos = _monomials_up_to(d)
    blocks = [
        ("u", [m for m in col_monos if m != (0, 0)]),
        ("h", col_monos),
        ("beta_dx", col_monos),
        ("beta_dy", col_monos),
    ]

    def add(col, poly, component, sign=1):
        base = 0 if component == "dx" else nrow
        for (ma, mb), coeff in poly.terms.items():
            idx = row_index.get((ma, mb))
            if idx is not None:
                entry = coeff if sign > 0 else -coeff
                rows[base + idx][col] = rows[base + idx].get(col, GQ_ZERO) + entry

    col = 0
    offsets = {}
    for name, monos in blocks:
        offsets[name] = (col, monos)
        for (ca, cb) in monos:
            mono = Polynomial2.monomial(GQ_ONE, ca, cb)
            if name == "u":
                # d(u~) + u~*alpha contributions
                add(col, mono.partial("x") + mono * alpha.a, "dx")
                add(col, mono.partial("y") + mono * alpha.b, "dy")
            elif name == "h":
                add(col, fx * mono, "dx", sign=-1)
                add(col, fy * mono, "dy", sign=-1)
            elif name == "beta_dx":
                add(col, f * mono, "dx", sign=-1)
            else:
                add(col, f * mono, "dy", sign=-1)
            col += 1
    rhs = [-alpha.a.coefficient(*m) for m in row_monos] + [
        -alpha.b.coefficient(*m) for m in row_monos
    ]
    result = solve_certified(rows, rhs, col)
    if result.feasible:
        sol = result.solution or {}
        pieces = {}
        for name, (offset, monos) in offsets.items():
            pieces[name] = _poly_from_columns(sol, monos, offset, len(monos))
        pieces["section"] = pieces.pop("u") + Polynomial2.constant(GQ_ONE)
        return MembershipVerdict(FEASIBLE, solution=pieces, meta={"degree_cap": d})
    witness = {}
    for i, v in (result.witness or {}).items():
        comp = "dx" if i < nrow else "dy"
        mono = row_monos[i % nrow]
        witness[f"{comp}:{format_monomial(*mono)}"] = v
    return MembershipVerdict(INFEASIBLE, witness=witness, meta={"degree_cap": d})
