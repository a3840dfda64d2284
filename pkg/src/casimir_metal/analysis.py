"""Verification layer: coefficient extraction and series-vs-exact tables.

``extract_coefficients`` is the independent oracle for the series: it never
looks at the closed-form coefficients, only least-squares-fits the exact
plasma-model correction factor on a small-ratio grid against the monomial
basis {r, r^2, r^3, r^4}.  Agreement of the fitted values with the stored
coefficients checks the series and the integral evaluators against each
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import perturbation
from .constants import PI
from .dielectric import PlasmaModel
from .errors import ConvergenceError
from .lifshitz import force_sphere_exact, pressure_plates_exact
from .perturbation import correction_factor_series
from .quadrature import QuadratureSettings

__all__ = [
    "FitReport",
    "ComparisonRow",
    "extract_coefficients",
    "compare_series_vs_exact",
    "exact_plasma_factor",
    "FIT_SETTINGS",
]

# Fit-grade quadrature: the quartic term contributes only ~1e-8 of the
# factor at the top of the fit grid, so the integrals need headroom well
# below that.
FIT_SETTINGS = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-15)

_REFERENCE_GAP = 1e-6  # m; arbitrary, factors depend on delta0/a only


def exact_plasma_factor(
    geometry: str, ratio: float, settings: QuadratureSettings | None = None
) -> float:
    """Exact plasma-model correction factor at penetration-depth ratio r.

    The factor depends on (a, lambda_p) only through r = delta0/a, so the
    gap is fixed at 1 um and lambda_p chosen to realize the requested ratio.
    """
    model = PlasmaModel(2.0 * PI * ratio * _REFERENCE_GAP)
    if geometry == "plates":
        return pressure_plates_exact(model, _REFERENCE_GAP, settings).correction_factor
    if geometry == "sphere":
        return force_sphere_exact(
            model, _REFERENCE_GAP, 100.0 * _REFERENCE_GAP, settings
        ).correction_factor
    raise ValueError(f"geometry must be 'plates' or 'sphere', got {geometry!r}")


@dataclass(frozen=True)
class FitReport:
    """Least-squares estimate of the four series coefficients."""

    geometry: str
    coefficients: tuple[float, float, float, float]
    uncertainties: tuple[float, float, float, float]
    ratios: np.ndarray
    factors: np.ndarray
    residual_norm: float


def extract_coefficients(
    geometry: str,
    ratios,
    settings: QuadratureSettings | None = None,
    factor_fn=None,
) -> FitReport:
    """Fit exact factors on a small-ratio grid to c1 r + ... + c4 r^4.

    ``ratios`` must be at least 8 strictly increasing points in (0, 0.02]:
    small enough that the quartic model truncation stays below the fit
    uncertainties, large enough that the high orders remain observable.
    ``factor_fn(ratio) -> factor`` may replace the exact evaluator (used by
    tests to check the fit machinery in isolation).
    """
    if geometry not in ("plates", "sphere"):
        raise ValueError(f"geometry must be 'plates' or 'sphere', got {geometry!r}")
    ratios = np.asarray(ratios, dtype=float)
    if ratios.size < 8:
        raise ValueError("need at least 8 grid points for a stable quartic fit")
    if np.any(ratios <= 0.0) or np.any(ratios > 0.02):
        raise ValueError("grid must lie in (0, 0.02]")
    if np.any(np.diff(ratios) <= 0.0):
        raise ValueError("grid must be strictly increasing")
    if factor_fn is None:
        fit_settings = settings or FIT_SETTINGS

        def factor_fn(r):
            return exact_plasma_factor(geometry, r, fit_settings)

    factors = np.empty(ratios.size)
    for i, r in enumerate(ratios):
        try:
            factors[i] = factor_fn(r)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"coefficient extraction aborted at grid point r={r:g}: {exc}",
                exc.estimate,
            ) from exc

    basis = np.column_stack([ratios**k for k in range(1, 5)])
    scale = np.linalg.norm(basis, axis=0)
    scaled = basis / scale
    cond = np.linalg.cond(scaled)
    if cond > 1e12:
        raise ValueError(
            f"normal equations ill-conditioned (cond={cond:.2e}); use a wider grid"
        )
    target = factors - 1.0
    coef_scaled, _, _, _ = np.linalg.lstsq(scaled, target, rcond=None)
    coefficients = coef_scaled / scale
    resid = target - basis @ coefficients
    dof = ratios.size - 4
    sigma2 = float(resid @ resid) / dof
    cov_scaled = np.linalg.inv(scaled.T @ scaled) * sigma2
    uncertainties = np.sqrt(np.diag(cov_scaled)) / scale
    return FitReport(
        geometry,
        tuple(float(c) for c in coefficients),
        tuple(float(u) for u in uncertainties),
        ratios,
        factors,
        float(math.sqrt(resid @ resid)),
    )


@dataclass(frozen=True)
class ComparisonRow:
    """One gap of a series-vs-exact comparison sweep.

    ``warn`` marks rows where the gap is below one plasma wavelength
    (ratio > 1/(2 pi)), outside the quoted validity of the series.  Rows
    whose exact integral failed carry NaNs and ``failed=True``.
    """

    a: float
    exact: float
    order4: float
    order2: float
    dev4: float
    dev2: float
    warn: bool
    failed: bool = False


def compare_series_vs_exact(
    model: PlasmaModel,
    geometry: str,
    a_grid,
    settings: QuadratureSettings | None = None,
) -> list[ComparisonRow]:
    """Exact vs order-4 vs order-2 correction factors over a gap grid."""
    if not isinstance(model, PlasmaModel):
        raise TypeError("series comparison requires a plasma model (needs delta0)")
    if geometry not in ("plates", "sphere"):
        raise ValueError(f"geometry must be 'plates' or 'sphere', got {geometry!r}")
    a_grid = np.asarray(a_grid, dtype=float)
    if np.any(np.diff(a_grid) <= 0.0):
        raise ValueError("a-grid must be strictly increasing")
    delta0 = model.penetration_depth
    rows = []
    for a in a_grid:
        ratio = delta0 / a
        s4 = correction_factor_series(geometry, ratio, 4)
        s2 = correction_factor_series(geometry, ratio, 2)
        warn = ratio > perturbation.SERIES_VALIDITY_RATIO or s4.beyond_validity
        try:
            if geometry == "plates":
                exact = pressure_plates_exact(model, a, settings).correction_factor
            else:
                # factor is R-independent; any radius in the PFT regime works
                exact = force_sphere_exact(model, a, 100.0 * a, settings).correction_factor
        except ConvergenceError:
            rows.append(
                ComparisonRow(
                    float(a), math.nan, s4.value, s2.value, math.nan, math.nan,
                    warn, failed=True,
                )
            )
            continue
        rows.append(
            ComparisonRow(
                float(a),
                exact,
                s4.value,
                s2.value,
                abs(s4.value - exact),
                abs(s2.value - exact),
                warn,
            )
        )
    return rows
