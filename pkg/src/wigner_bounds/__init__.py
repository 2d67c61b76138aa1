"""Bounds on the non-Gaussianity of single-mode states with positive Wigner functions."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DivergentMoment,
    NegativityDetected,
    NoBracket,
    NonConvergence,
    NormalizationViolation,
    NoSolution,
    NotPositiveDefinite,
    ParamOutOfRange,
    SchemaError,
    SingularSystem,
    WignerBoundsError,
)
from .quadrature import integrate_planar, integrate_radial  # noqa: E402
from .phase_space import (  # noqa: E402
    CovarianceMatrix,
    Extremal,
    Fock,
    GaussianState,
    PlanarFunction,
    RadialFunction,
    RadialMixture,
    Sampled,
    Thermal,
    coherent_mixture_wigner,
    covariance_of,
    fock_wigner,
    gaussian_reference,
    laguerre_eval,
    non_gaussianity,
    normalization,
    overlap,
    purity,
    symplectic_transform,
    thermal_wigner,
    vacuum_wigner,
    williamson_1mode,
)
from .bounds import (  # noqa: E402
    BoundCurve,
    Branch,
    BranchPoint,
    branch_one_root,
    branch_two_root,
    coherent_lower_estimate,
    cs_delta_lower,
    delta_ex_at,
    purity_extremity_check,
    ultimate_upper,
    upper_surface,
    x_r_root,
)
from .extremal import ExtremalSolution, ExtremalSpec, solve_one_root, solve_two_root, verify_against_closed_form  # noqa: E402
from .physicality import PhysicalityReport, check_candidate, hillery_fock_test, marginal_x  # noqa: E402
