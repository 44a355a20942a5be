"""Fox-Wright function pPsi_q with balanced scales (sum B - sum A = -1).

Evaluation near the singular point rho via convergent expansions with
recursively computed coefficients, the power series, the residue series at
infinity and the jump/average on the cut [rho, inf).
"""
from .engine import (
    CoefficientTable,
    LogCoefficient,
    coeff_R,
    coeff_W,
    get_table,
    growth_constants,
    h_series,
    l_r,
    l_r_theta,
    log_case_coeffs,
    q_m,
    v_n,
    v_n_dual,
    w_radius_estimate,
)
from .errors import (
    CutError,
    DeltaError,
    DomainError,
    FoxWrightError,
    IntegerMuError,
    PoleCollisionError,
    PoleError,
    ScaleError,
    ShapeError,
    SigmaError,
    ToleranceError,
)
from .evaluator import (
    CutValues,
    EvalResult,
    average_on_cut,
    cut_values,
    eval_at_rho,
    eval_auto,
    eval_maclaurin,
    eval_residue_series,
    eval_singular_expansion,
    jump_on_cut,
)
from .params import ParameterSet, choose_sigma, parse_complex, parse_complex_list, validate

__version__ = "0.1.0"

__all__ = [
    "CoefficientTable", "LogCoefficient", "coeff_R", "coeff_W", "get_table", "growth_constants",
    "h_series", "l_r", "l_r_theta", "log_case_coeffs", "q_m", "v_n", "v_n_dual", "w_radius_estimate",
    "CutError", "DeltaError", "DomainError", "FoxWrightError", "IntegerMuError", "PoleCollisionError",
    "PoleError", "ScaleError", "ShapeError", "SigmaError", "ToleranceError",
    "CutValues", "EvalResult", "average_on_cut", "cut_values", "eval_at_rho", "eval_auto",
    "eval_maclaurin", "eval_residue_series", "eval_singular_expansion", "jump_on_cut",
    "ParameterSet", "choose_sigma", "parse_complex", "parse_complex_list", "validate",
]
