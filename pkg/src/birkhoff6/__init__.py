"""Exact Birkhoff-regularity decisions for sixth-order problems with lambda-linear
separated boundary conditions."""

from .birkhoff import birkhoff_matrix, block_det, build_W0, build_delta, gamma_block, omega_leading
from .classification import classify_endpoint, enumerate_case_space
from .crossval import SweepConfig, cross_validate, verify_all
from .cyclotomic import CycNum, format_cyc, parse_cyc, xi_pow
from .model import (
    BoundaryCondition, ProblemError, ProblemSpec, condition, dirichlet_problem, parse_problem,
    problem, validate_problem,
)
from .regularity import NotApplicable, SubcaseNotInPaper, closed_form, decide

__all__ = [
    "BoundaryCondition", "CycNum", "NotApplicable", "ProblemError", "ProblemSpec",
    "SubcaseNotInPaper", "SweepConfig", "birkhoff_matrix", "block_det", "build_W0",
    "build_delta", "classify_endpoint", "closed_form", "condition", "cross_validate",
    "decide", "dirichlet_problem", "enumerate_case_space", "format_cyc", "gamma_block",
    "omega_leading", "parse_cyc", "parse_problem", "problem", "validate_problem",
    "verify_all", "xi_pow",
]
