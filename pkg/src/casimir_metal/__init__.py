"""Casimir forces between real metals.

Exact evaluation of the regularized Lifshitz integrals under the plasma
model (or tabulated permittivity data), the closed-form correction series
up to fourth order in relative penetration depth, and the verification
machinery cross-checking the two routes and the two geometries.
"""

from .analysis import (
    ComparisonRow,
    FitReport,
    compare_series_vs_exact,
    exact_plasma_factor,
    extract_coefficients,
)
from .constants import CONSTANTS_VERSION, C_LIGHT, HBAR, HBAR_C
from .dielectric import (
    MemoizedModel,
    PermittivityTable,
    PlasmaModel,
    TabulatedModel,
    load_table,
    plasma_eps,
    table_eps,
)
from .errors import (
    CasimirMetalError,
    ConvergenceError,
    DomainError,
    TableValidationError,
)
from .lifshitz import (
    ForceResult,
    PlatesGap,
    ReflectionPair,
    SpherePlate,
    energy_density_exact,
    force_sphere_exact,
    ideal_energy_density,
    ideal_pressure,
    ideal_sphere_force,
    pressure_plates_exact,
    reflection_pair,
)
from .perturbation import (
    SeriesCoefficients,
    SeriesFactor,
    correction_factor_series,
    interpolation_comparison,
    pft_order_consistency,
    series_coefficients,
)
from .quadrature import (
    IntegralEstimate,
    QuadratureSettings,
    integrate_1d,
    integrate_2d,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CONSTANTS_VERSION",
    "C_LIGHT",
    "HBAR",
    "HBAR_C",
    "CasimirMetalError",
    "ConvergenceError",
    "DomainError",
    "TableValidationError",
    "PlasmaModel",
    "PermittivityTable",
    "TabulatedModel",
    "MemoizedModel",
    "plasma_eps",
    "table_eps",
    "load_table",
    "QuadratureSettings",
    "IntegralEstimate",
    "integrate_1d",
    "integrate_2d",
    "PlatesGap",
    "SpherePlate",
    "ReflectionPair",
    "ForceResult",
    "reflection_pair",
    "ideal_pressure",
    "ideal_energy_density",
    "ideal_sphere_force",
    "pressure_plates_exact",
    "energy_density_exact",
    "force_sphere_exact",
    "SeriesCoefficients",
    "SeriesFactor",
    "series_coefficients",
    "correction_factor_series",
    "pft_order_consistency",
    "interpolation_comparison",
    "FitReport",
    "ComparisonRow",
    "extract_coefficients",
    "compare_series_vs_exact",
    "exact_plasma_factor",
]
