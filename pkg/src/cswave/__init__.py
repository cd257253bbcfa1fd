"""Spectral toolbox for Chern-Simons matter waves on the periodic plane.

Two coupled systems (complex scalar and two-spinor matter) evolved through
exact half-wave phases plus alias-free nonlinear forcing, together with the
harmonic-analysis instruments used to study them: dispersive space-time
norms, null-form symbols and their bounds, cone-restricted convolution
integrals, and product-estimate checkers.
"""

__version__ = "0.1.0"

from .errors import (
    BlowupError,
    ConstraintViolationError,
    ContradictionError,
    HypothesisError,
    QuadratureError,
    ResourceError,
    UsageError,
)
from .grid import (
    ComplexField,
    Grid2D,
    constant,
    dealias_product,
    pad_factor,
    plane_wave,
    transform,
)
from .multipliers import (
    MultiplierSpec,
    apply_multiplier,
    derivative_symbol,
    dispersion_symbol,
    half_wave_merge,
    half_wave_split,
    hodge_decompose,
    multiplier_symbol,
    spatial_derivative,
)
from .dirac import (
    ALGEBRA,
    DiracAlgebra,
    SpinorField,
    dirac_hamiltonian,
    dirac_project,
    epsilon_symbol,
    projection_matrix,
    signed_riesz_symbol,
)
from .norms import (
    SpacetimeField,
    contraction_parameters,
    critical_exponent,
    dilate_exact,
    fl_norm,
    scaling_check,
    spacetime_transform,
    xsb_norm,
)
from .nullforms import (
    angle_bound_ratio,
    angle_bound_scan,
    cone_weight,
    ConePoint,
    hyperbolic_leibniz_ratio,
    leibniz_scan,
    nullform_symbol,
    symbol_bound_ratio,
    symbol_bound_scan,
)
from .coneintegrals import (
    cone_integral_exponents,
    delta_convolution_integral,
    integral_sup_scan,
)
from .estimates import (
    bilinear_ratio_estimate,
    fourier_lebesgue_product_check,
    product_estimate_check,
    wave_sobolev_product_check,
    weighted_convolution,
)
from .state import Channel, HalfWaveState, RhsResult
from .csh import (
    CSHSystem,
    HiggsPotential,
    csh_initial_data,
    csh_rhs,
    constraint_residual,
    gauge_residual,
    hodge_nullform_rhs,
)
from .csd import (
    CSDSystem,
    charge,
    csd_initial_data,
    csd_rhs,
    current_nullform_split,
    dirac_current,
    interaction_nullform_split,
)
from .evolve import (
    IntegratorConfig,
    PicardConfig,
    PicardResult,
    integrate,
    linear_propagate,
    picard_iterate,
    step,
)
from .recipes import (
    annulus_spectrum,
    gaussian,
    modulated_gaussian,
    scalar_recipe,
    spinor_recipe,
)
