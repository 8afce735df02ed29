"""Exact solvability criteria and desk-scale numerics for the hypercritical
deformed Hermitian-Yang-Mills equation on model Kahler varieties."""

__version__ = "0.1.0"

from .variety import (
    CohomClass,
    SubvarietyModel,
    VarietyModel,
    build_builtin,
    builtin_names,
    complex_wedge_integral,
    load_model,
    packaged_model,
    parse_model,
    parse_model_file,
    restrict_intersect,
    serialize_model,
    wedge_mix_integral,
)
from .central_charge import (
    AngleReport,
    ComplexPoly,
    NonvanishingCertificate,
    certified_tail_start,
    charge_polynomial,
    charge_report,
    charge_value,
    nonvanishing_certificate,
    winding_angle,
)
from .criteria import (
    ChernVector,
    CriteriaVerdict,
    chern_vector,
    check_chern_inequality,
    check_claim_inequalities,
    check_condition_ii,
    check_condition_iii,
    check_kahlerity,
    check_stability_inequalities,
    cot_theta0_rational,
    full_verdict,
)
from .stability import (
    FamilySpec,
    HOmegaReport,
    PositivityCertificate,
    check_family_positivity,
    check_remark_condition,
    cot_shifted,
    family_inequality_polynomial,
    h_omega_verdict,
    linear_family,
    validate_test_family,
)
from .phase import (
    HermitianPair,
    PhasePoint,
    arccot,
    classify_branch,
    complex_quotient,
    generalized_eigenvalues,
    lagrangian_phase,
    solve_scalar_shift,
)
from .torus import (
    SolveReport,
    TorusProblem,
    build_torus_problem,
    newton_solve,
    phase_consistency_error,
    residual,
    trig_field,
    verify_solution,
)
from .report import run_counterexample, sweep_csv, parse_grid_spec

__all__ = [
    "AngleReport",
    "ChernVector",
    "CohomClass",
    "ComplexPoly",
    "CriteriaVerdict",
    "FamilySpec",
    "HOmegaReport",
    "HermitianPair",
    "NonvanishingCertificate",
    "PhasePoint",
    "PositivityCertificate",
    "SolveReport",
    "SubvarietyModel",
    "TorusProblem",
    "VarietyModel",
    "arccot",
    "build_builtin",
    "build_torus_problem",
    "builtin_names",
    "certified_tail_start",
    "charge_polynomial",
    "charge_report",
    "charge_value",
    "check_chern_inequality",
    "check_claim_inequalities",
    "check_condition_ii",
    "check_condition_iii",
    "check_family_positivity",
    "check_kahlerity",
    "check_remark_condition",
    "check_stability_inequalities",
    "chern_vector",
    "classify_branch",
    "complex_quotient",
    "complex_wedge_integral",
    "cot_shifted",
    "cot_theta0_rational",
    "family_inequality_polynomial",
    "full_verdict",
    "generalized_eigenvalues",
    "h_omega_verdict",
    "lagrangian_phase",
    "linear_family",
    "load_model",
    "newton_solve",
    "nonvanishing_certificate",
    "packaged_model",
    "parse_grid_spec",
    "parse_model",
    "parse_model_file",
    "phase_consistency_error",
    "residual",
    "restrict_intersect",
    "run_counterexample",
    "serialize_model",
    "solve_scalar_shift",
    "sweep_csv",
    "trig_field",
    "validate_test_family",
    "verify_solution",
    "wedge_mix_integral",
    "winding_angle",
]
