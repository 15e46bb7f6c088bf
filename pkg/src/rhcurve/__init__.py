"""rhcurve: exact verification of flat connections at plane-curve singularities.

Everything is computed over the Gaussian rationals; every verdict either
comes with an explicit solution that recombines to the target or with an
infeasibility witness that can be re-checked independently.
"""

__version__ = "0.1.0"

from .rationals import GaussianRational, format_gq, parse_gq
from .series import InnerNotNilpotent, NotAUnit, TruncatedSeries
from .polynomials import Polynomial2, format_monomial, parse_monomial
from .curves import (
    Branch,
    DuplicateDirection,
    IrrationalLeadingCoefficient,
    Normalization,
    PlaneCurve,
    branches_equivalent,
    make_line_union,
    newton_puiseux,
    verify_branch,
)
from .membership import (
    MembershipVerdict,
    OrderMismatch,
    StrongHolomorphyVerdict,
    exactness_solve,
    ideal_membership,
    subalgebra_membership,
    vector_field_equation_solve,
    verify_ideal_membership,
    verify_strong_verdict,
)
from .forms import (
    CurveOneForm,
    CurveTwoForm,
    TorsionVerdict,
    d_function,
    d_oneform,
    is_closed,
    is_torsion,
    is_zero_oneform,
    pullback_oneform,
    two_form_is_zero,
    wedge,
)
from .connections import (
    BranchFrame,
    Classification,
    ClassificationStatus,
    Connection,
    CurveFrame,
    FrameStrongVerdict,
    NonTameWitness,
    RankNotSupported,
    SingularInitialValue,
    build_continuous_frame,
    branch_matching_potential,
    classify,
    is_flat,
    parallel_section_at_origin,
    solve_frame_on_branch,
)
from .nontame_example import (
    example_branch,
    example_connection,
    example_curve,
    example_normalization,
    example_one_form,
    integrated_pullback,
    run_checks,
)
