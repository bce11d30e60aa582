"""Positive rank-one perturbations of cone automorphisms and witnesses that their inverses are not positive."""

from .cones import (
    Copositive,
    GridNonneg,
    Lexicographic,
    Lorentz,
    Membership,
    MembershipVerdict,
    Orthant,
    Psd,
    Ray,
    Region,
    parse_cone,
)
from .functionals import (
    CPForm,
    Combination,
    DenseCovector,
    LexFirstCoord,
    PointEvaluation,
    Scaled,
    SpinDual,
    TraceForm,
    TrapezoidIntegral,
)
from .operators import (
    Congruence,
    Dense,
    Identity,
    PermDiag,
    RankOnePerturbed,
    SpinAuto,
    apply,
    apply_inverse,
    inverse_residual,
    is_positive_map,
    pullback,
    rank_one_perturb,
    sample_automorphism,
    scaled_family,
)
from .rng import stream
from .verify import run_paper_examples, run_property_suite, run_scenario
from .witnesses import (
    boundary_crossing,
    boundary_functional_witness,
    decompose_2x2,
    extremal_witness,
    interior_promotion_check,
    nonpositive_inverse_witness,
    smallest_scaling_n,
)

__version__ = "0.1.0"

__all__ = [
    "CPForm",
    "Combination",
    "Congruence",
    "Copositive",
    "Dense",
    "DenseCovector",
    "GridNonneg",
    "Identity",
    "LexFirstCoord",
    "Lexicographic",
    "Lorentz",
    "Membership",
    "MembershipVerdict",
    "Orthant",
    "PermDiag",
    "PointEvaluation",
    "Psd",
    "RankOnePerturbed",
    "Ray",
    "Region",
    "Scaled",
    "SpinAuto",
    "SpinDual",
    "TraceForm",
    "TrapezoidIntegral",
    "apply",
    "apply_inverse",
    "boundary_crossing",
    "boundary_functional_witness",
    "decompose_2x2",
    "extremal_witness",
    "interior_promotion_check",
    "inverse_residual",
    "is_positive_map",
    "nonpositive_inverse_witness",
    "parse_cone",
    "pullback",
    "rank_one_perturb",
    "run_paper_examples",
    "run_property_suite",
    "run_scenario",
    "sample_automorphism",
    "scaled_family",
    "smallest_scaling_n",
    "stream",
]
