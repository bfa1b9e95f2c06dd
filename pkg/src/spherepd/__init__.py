"""Isotropic positive definite kernels on products of spheres.

Expansion of bivariate isotropic parts in the tensor Gegenbauer basis,
coefficient-based positive-definiteness certification, dimension-walk
recurrences up to the infinite-dimensional limit, empirical Gram oracles,
constructive kernel families, and scattered-data interpolation.
"""

__version__ = "0.1.0"

from .special_fn import (
    INFINITY,
    gegenbauer,
    gegenbauer_at_one,
    normalized_gegenbauer,
    ortho_constant,
    poisson_kernel,
    surface_area,
)
from .quadrature import (
    CHECK,
    HAT,
    CoefficientGrid,
    QuadratureRule,
    analyze,
    gauss_rule,
    integrate_2d,
    read_grid,
    to_check_mode,
    to_hat_mode,
    write_grid,
)
from .expansion import (
    INCONCLUSIVE,
    NOT_PD,
    PD_CERTIFIED,
    SchoenbergExpansion,
    certify_pd,
    coefficient_sum,
    dimension_walk,
    expansion_from_values,
    infinite_limit,
    synthesize,
)
from .pd_oracle import (
    DISTINCT_COMPONENTWISE,
    DISTINCT_PAIRS,
    GramReport,
    ProductPointSet,
    diagonal_restriction,
    gram,
    read_point_set,
    sample_points,
    slice_restriction,
    test_dc_strict,
    test_pd,
    test_strict,
    write_point_set,
)
from .constructions import (
    IsotropicKernel,
    cm_exponential,
    cm_inverse_power,
    combine,
    constant_kernel,
    kernel_from_label,
    product_kernel,
    standard_test_kernels,
)
from .interp import (
    InterpolationError,
    InterpolationProblem,
    Interpolant,
    evaluate,
    loo_error,
    read_problem,
    solve,
    write_problem,
)
