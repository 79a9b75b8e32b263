"""Exact automorphism algebras of Siegel domains of the second kind."""

from .algebra import (
    DomainError,
    GradedReport,
    SiegelDomain,
    bound_rhs,
    graded_algebra,
    make_domain,
    report,
)
from .catalog import bound_scan, case_analysis, named_domain, verify_paper
from .cones import Cone, automorphism_algebra_basis, halfline, lorentz, orthant, product
from .hermitian import HermitianTuple, pair_normal_form, skew_space, validate_omega_hermitian
from .linalg import GaussianRational, Matrix

__all__ = [
    "Cone",
    "DomainError",
    "GaussianRational",
    "GradedReport",
    "HermitianTuple",
    "Matrix",
    "SiegelDomain",
    "automorphism_algebra_basis",
    "bound_rhs",
    "bound_scan",
    "case_analysis",
    "graded_algebra",
    "halfline",
    "lorentz",
    "make_domain",
    "named_domain",
    "orthant",
    "pair_normal_form",
    "product",
    "report",
    "skew_space",
    "validate_omega_hermitian",
    "verify_paper",
]
