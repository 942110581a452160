"""Spectral stability of a cosine shear in rotating shallow-water flow.

The package computes growth rates of sinusoidal perturbations to the
background flow u(y) = cos(y) on a 2*pi-periodic channel, with rotation
entering through an inverse Burger number.  The central route reduces the
eigenvalue problem to a half-infinite tridiagonal matrix whose unique
negative eigenvalue -r gives the squared wave speed c^2 = -r, so truncations
yield certified, monotonically improving lower bounds k*sqrt(r_n) on the
growth rate.  Independent oracles (dense Fourier truncation, direct
tridiagonal diagonalization, resolvent continued fraction, and an
initial-value integration) cross-check the same quantity.
"""

from .diagnostics import ProfileDiagnostics, howard_check, modified_inflection
from .dispersion import (
    DispersionPoint,
    Eigenfunction,
    growth_lower_bound,
    reconstruct_eigenfunction,
    solve_dispersion,
    sweep,
)
from .errors import (
    DegenerateFit,
    EigensolverFailure,
    MultipleNegativeRoots,
    NoRootAtNmax,
    ResidualTooLarge,
    ShearSpectrumError,
    StepUnstable,
)
from .evolve import EvolutionRun, fit_growth, integrate
from .model import (
    FlowParams,
    JacobiCoefficients,
    Profile,
    jacobi_coefficients,
    qhat,
    weight,
    weight_is_zero,
    zeta,
)
from .oracle import (
    SpectrumEstimate,
    assemble_fourier_matrix,
    jacobi_truncation_eigs,
    stieltjes_pole,
    stieltjes_transform,
    truncated_spectrum,
)
from .orthopoly import (
    NegativeRootTrace,
    SturmCount,
    negative_root,
    ratio_asymptote,
    ratio_limit,
    root_spectrum,
    sturm_count,
    trace_negative_roots,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateFit",
    "DispersionPoint",
    "Eigenfunction",
    "EigensolverFailure",
    "EvolutionRun",
    "FlowParams",
    "JacobiCoefficients",
    "MultipleNegativeRoots",
    "NegativeRootTrace",
    "NoRootAtNmax",
    "Profile",
    "ProfileDiagnostics",
    "ResidualTooLarge",
    "ShearSpectrumError",
    "SpectrumEstimate",
    "StepUnstable",
    "SturmCount",
    "assemble_fourier_matrix",
    "fit_growth",
    "growth_lower_bound",
    "howard_check",
    "integrate",
    "jacobi_coefficients",
    "jacobi_truncation_eigs",
    "modified_inflection",
    "negative_root",
    "qhat",
    "ratio_asymptote",
    "ratio_limit",
    "reconstruct_eigenfunction",
    "root_spectrum",
    "solve_dispersion",
    "stieltjes_pole",
    "stieltjes_transform",
    "sturm_count",
    "sweep",
    "trace_negative_roots",
    "truncated_spectrum",
    "weight",
    "weight_is_zero",
    "zeta",
]
