"""Heat kernels and heat traces on compact Lie groups with bi-invariant metrics."""

from __future__ import annotations

from ._backend import BACKEND
from .errors import DomainError, GroupSpecError, InternalConsistencyError, LieHeatError, WeylSingularError
from .geometry import (
    chart_identity_residual,
    chart_metric,
    flat_laplacian,
    laplace_beltrami_chart,
    scalar_curvature,
)
from .kernels import (
    asymptotic_kernel,
    asymptotic_ratio,
    gaussian_kernel,
    heat_equation_residual,
    kernel_compare,
    kernel_compare_mp,
    torus_exact_kernel,
)
from .liealg import (
    GroupSpec,
    StructuredLieAlgebra,
    ad_matrix,
    bracket,
    build_algebra,
    casimir_trace,
    j_function,
    parse_group_spec,
)
from .rootsys import RootSystem, character, dominant_weights, root_system, weyl_dimension
from .spectrum import eigenvalue_list, heat_trace, spectral_kernel_ratio, trace_curve, vhat
from .verify import verify, verify_group

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "GroupSpec",
    "GroupSpecError",
    "InternalConsistencyError",
    "LieHeatError",
    "RootSystem",
    "StructuredLieAlgebra",
    "WeylSingularError",
    "ad_matrix",
    "asymptotic_kernel",
    "asymptotic_ratio",
    "bracket",
    "build_algebra",
    "casimir_trace",
    "character",
    "chart_identity_residual",
    "chart_metric",
    "dominant_weights",
    "eigenvalue_list",
    "flat_laplacian",
    "gaussian_kernel",
    "heat_equation_residual",
    "heat_trace",
    "j_function",
    "kernel_compare",
    "kernel_compare_mp",
    "laplace_beltrami_chart",
    "parse_group_spec",
    "root_system",
    "scalar_curvature",
    "spectral_kernel_ratio",
    "torus_exact_kernel",
    "trace_curve",
    "verify",
    "verify_group",
    "vhat",
    "weyl_dimension",
]
