"""Exact calculator for rim tori, vanishing cycles, and divisor covers."""

from .covers import (
    CoverPoint,
    TorusPoint,
    base_point,
    cover_project,
    deck_act,
    in_weighted_subtorus,
    lift_linear_loop,
    rank_profile,
)
from .divisors import (
    ContactProfile,
    DeckGroupReport,
    DivisorComponent,
    DivisorData,
    InvarianceVerdict,
    active_component_span,
    contact_image,
    contact_preimage,
    contact_sum_hom,
    cover_homology_finitely_generated,
    deck_action,
    deck_group,
    gcd_tuple,
    invariance_verdict,
    rim_tori_module,
    self_glue,
    vanishing_cycles,
    vanishing_cycles_from_pairs,
    vanishing_threshold,
)
from .groups import (
    AmbientMismatchError,
    FgAbGroup,
    Homomorphism,
    IllDefinedHomomorphismError,
    Subgroup,
    format_canonical,
)
from .matrices import (
    IntMatrix,
    SmithDecomposition,
    hermite_form,
    integer_kernel,
    smith_normal_form,
    solve_integral,
)
from .scenario import Scenario, ScenarioError, load_scenario, parse_scenario
from .squares import (
    ExactnessReport,
    ExactSquare,
    comparison_square,
    elliptic_p1xt2_square,
    short_exact_report,
    verify,
)

__all__ = [
    "AmbientMismatchError",
    "ContactProfile",
    "CoverPoint",
    "DeckGroupReport",
    "DivisorComponent",
    "DivisorData",
    "ExactSquare",
    "ExactnessReport",
    "FgAbGroup",
    "Homomorphism",
    "IllDefinedHomomorphismError",
    "IntMatrix",
    "InvarianceVerdict",
    "Scenario",
    "ScenarioError",
    "SmithDecomposition",
    "Subgroup",
    "TorusPoint",
    "active_component_span",
    "base_point",
    "comparison_square",
    "contact_image",
    "contact_preimage",
    "contact_sum_hom",
    "cover_homology_finitely_generated",
    "cover_project",
    "deck_act",
    "deck_action",
    "deck_group",
    "elliptic_p1xt2_square",
    "format_canonical",
    "gcd_tuple",
    "hermite_form",
    "in_weighted_subtorus",
    "integer_kernel",
    "invariance_verdict",
    "lift_linear_loop",
    "load_scenario",
    "parse_scenario",
    "rank_profile",
    "rim_tori_module",
    "self_glue",
    "short_exact_report",
    "smith_normal_form",
    "solve_integral",
    "vanishing_cycles",
    "vanishing_cycles_from_pairs",
    "vanishing_threshold",
    "verify",
]
