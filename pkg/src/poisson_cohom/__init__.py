"""Exact weight-graded Lie algebra cohomology of homogeneous Poisson
structures on n-space, with Poisson-like and Poisson-polynomial variants.
"""

__version__ = "0.1.0"

from .algebra import RatPoly, mono_basis, parse_poly
from .engine import ComplexReport, build_report, cross_check, run
from .fixtures import builtin_names, load_structure
from .poisson import (GradedMultiVector, MultiVector, PoissonStructure,
                      jacobi_check, phi_flatten, r_schouten, schouten)

__all__ = [
    "RatPoly", "mono_basis", "parse_poly",
    "ComplexReport", "build_report", "cross_check", "run",
    "builtin_names", "load_structure",
    "GradedMultiVector", "MultiVector", "PoissonStructure",
    "jacobi_check", "phi_flatten", "r_schouten", "schouten",
    "__version__",
]
