"""Dielectric permittivity along the imaginary frequency axis.

Two sources are supported: the free-electron plasma model

    eps(i xi) = 1 + (omega_p / xi)^2,     omega_p = 2 pi c / lambda_p

and tabulated optical data, converted with the standard dispersion
(Kramers-Kronig) transform

    eps(i xi) = 1 + (2/pi) Int_0^inf  omega eps''(omega) / (omega^2 + xi^2) domega.

The transform above is the form conventionally used with Lifshitz theory; it
is assumed here since only the imaginary part eps''(omega) is ingested.

Tabulated data rarely covers the full frequency axis, so the integral is
completed with two configurable power-law tails anchored at the first and
last rows: eps'' ~ 1/omega below range (free-electron behavior) and
eps'' ~ 1/omega^3 above range.  Either tail can be switched off, in which
case eps'' is treated as zero outside the table.  Within the table, rows are
joined log-log-linearly (power laws per segment), matching how optical data
spanning many decades is usually plotted and interpolated.

All models are immutable and their evaluations are pure functions.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np
from scipy.interpolate import CubicSpline

from .constants import C_LIGHT, PI
from .errors import DomainError, TableValidationError
from .quadrature import QuadratureSettings, integrate_1d

__all__ = [
    "DielectricModel",
    "PlasmaModel",
    "PermittivityTable",
    "TabulatedModel",
    "MemoizedModel",
    "plasma_eps",
    "table_eps",
    "table_deps_dxi",
    "load_table",
]


class DielectricModel(Protocol):
    """Anything providing eps(i xi) and its xi-derivative, vectorized."""

    def eps(self, xi): ...

    def deps_dxi(self, xi): ...


def _require_positive_xi(xi):
    xi = np.asarray(xi, dtype=float)
    if np.any(xi <= 0.0):
        raise DomainError("xi must be positive (the xi -> 0 limit is analytic only)")
    return xi


@dataclass(frozen=True)
class PlasmaModel:
    """Plasma-model metal, parametrized by its plasma wavelength in meters."""

    plasma_wavelength: float

    def __post_init__(self):
        if not self.plasma_wavelength > 0.0:
            raise DomainError("plasma_wavelength must be positive")

    @property
    def omega_p(self) -> float:
        """Plasma (angular) frequency, rad/s."""
        return 2.0 * PI * C_LIGHT / self.plasma_wavelength

    @property
    def penetration_depth(self) -> float:
        """Effective penetration depth of zero-point oscillations, meters."""
        return self.plasma_wavelength / (2.0 * PI)

    def eps(self, xi):
        xi = _require_positive_xi(xi)
        r = self.omega_p / xi
        return 1.0 + r * r

    def deps_dxi(self, xi):
        xi = _require_positive_xi(xi)
        return -2.0 * self.omega_p**2 / xi**3


def plasma_eps(model: PlasmaModel, xi):
    """eps(i xi) = 1 + (omega_p/xi)^2; diverges as xi -> 0, so xi must be > 0."""
    return model.eps(xi)


@dataclass(frozen=True)
class PermittivityTable:
    """Rows of (omega [rad/s], eps''(omega)), strictly increasing in omega.

    ``low_tail`` / ``high_tail`` enable the 1/omega and 1/omega^3
    extrapolations below and above the tabulated range.
    """

    omega: np.ndarray
    eps_imag: np.ndarray
    low_tail: bool = True
    high_tail: bool = True

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float)
        eps_imag = np.array(self.eps_imag, dtype=float)
        if omega.ndim != 1 or eps_imag.shape != omega.shape:
            raise TableValidationError("omega and eps_imag must be equal-length 1-D")
        if omega.size < 2:
            raise TableValidationError("fewer than 2 rows")
        for i, w in enumerate(omega, start=1):
            if not w > 0.0:
                raise TableValidationError(f"row {i}: omega must be positive")
        for i in range(1, omega.size):
            if omega[i] <= omega[i - 1]:
                raise TableValidationError(
                    f"row {i + 1}: omega not strictly increasing"
                )
        for i, e in enumerate(eps_imag, start=1):
            if e < 0.0:
                raise TableValidationError(f"row {i}: eps_imag must be nonnegative")
        omega.setflags(write=False)
        eps_imag.setflags(write=False)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "eps_imag", eps_imag)


def load_table(source) -> PermittivityTable:
    """Parse a permittivity CSV into a validated table.

    Format: header line ``omega_rad_s,eps_imag``, one decimal float pair per
    row, ``#`` starting comment lines.  ``source`` may be a path, a text or
    byte string, or an open (text or binary) stream.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str) and "\n" not in source and "," not in source:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    elif isinstance(source, str):
        text = source
    elif hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()

    omegas: list[float] = []
    eps: list[float] = []
    saw_header = False
    for fields in csv.reader(io.StringIO(text)):
        if not fields or not "".join(fields).strip():
            continue
        if fields[0].lstrip().startswith("#"):
            continue
        if not saw_header:
            header = [c.strip() for c in fields]
            if header != ["omega_rad_s", "eps_imag"]:
                raise TableValidationError(
                    f"expected header 'omega_rad_s,eps_imag', got {','.join(header)!r}"
                )
            saw_header = True
            continue
        row = len(omegas) + 1
        if len(fields) != 2:
            raise TableValidationError(f"row {row}: expected 2 columns, got {len(fields)}")
        try:
            w = float(fields[0])
            e = float(fields[1])
        except ValueError:
            raise TableValidationError(
                f"row {row}: could not parse {','.join(fields)!r} as two floats"
            ) from None
        omegas.append(w)
        eps.append(e)
    if len(omegas) < 2:
        raise TableValidationError("fewer than 2 rows")
    return PermittivityTable(np.array(omegas), np.array(eps))


# ---------------------------------------------------------------------------
# Dispersion transform

def _segment_integral(table, xi, power, settings):
    """Sum of per-segment integrals Int omega^k eps''(omega)/(omega^2+xi^2)^m.

    power selects the integrand: 1 -> the dispersion integrand
    omega eps''/(omega^2+xi^2); 2 -> its xi-derivative factor
    omega eps''/(omega^2+xi^2)^2 (without the -2 xi prefactor).
    Each segment uses the log-log-linear interpolant and is integrated in
    log-omega, so the only non-smooth points (the row joints) fall on panel
    boundaries.
    """
    omega = table.omega
    eimag = table.eps_imag
    nseg = omega.size - 1
    seg_settings = QuadratureSettings(
        rel_tol=settings.rel_tol,
        abs_tol=settings.abs_tol / nseg,
        max_subdivisions=60,
        x_max=settings.x_max,
    )
    total = 0.0
    err = 0.0
    xi2 = xi * xi
    for i in range(nseg):
        w0, w1 = omega[i], omega[i + 1]
        e0, e1 = eimag[i], eimag[i + 1]
        if e0 == 0.0 and e1 == 0.0:
            continue
        if e0 > 0.0 and e1 > 0.0:
            m = math.log(e1 / e0) / math.log(w1 / w0)

            def interp(w, e0=e0, w0=w0, m=m):
                return e0 * (w / w0) ** m

        else:
            def interp(w, e0=e0, e1=e1, w0=w0, w1=w1):
                return e0 + (e1 - e0) * (w - w0) / (w1 - w0)

        if power == 1:
            def integrand(y, interp=interp):
                w = np.exp(y)
                return w * w * interp(w) / (w * w + xi2)
        else:
            def integrand(y, interp=interp):
                w = np.exp(y)
                den = w * w + xi2
                return w * w * interp(w) / (den * den)

        est = integrate_1d(integrand, math.log(w0), math.log(w1), seg_settings)
        total += est.value
        err += est.error
    return total, err


def table_eps(table: PermittivityTable, xi, settings: QuadratureSettings | None = None):
    """Dispersion transform of a permittivity table, vectorized over xi."""
    settings = settings or QuadratureSettings(rel_tol=1e-10, abs_tol=1e-13)
    xi_arr = _require_positive_xi(xi)
    out = np.empty(xi_arr.shape)
    for idx, x in np.ndenumerate(xi_arr):
        central, _ = _segment_integral(table, x, 1, settings)
        total = central
        if table.low_tail:
            w1 = table.omega[0]
            e1 = table.eps_imag[0]
            total += e1 * w1 * math.atan(w1 / x) / x
        if table.high_tail:
            wn = table.omega[-1]
            en = table.eps_imag[-1]
            total += en * wn**3 * (1.0 / wn - math.atan(x / wn) / x) / (x * x)
        out[idx] = 1.0 + (2.0 / PI) * total
    return float(out) if np.isscalar(xi) or np.ndim(xi) == 0 else out


def table_deps_dxi(table: PermittivityTable, xi, settings: QuadratureSettings | None = None):
    """d eps(i xi) / d xi for a tabulated model (needed by derivative-form
    force integrands)."""
    settings = settings or QuadratureSettings(rel_tol=1e-10, abs_tol=1e-13)
    xi_arr = _require_positive_xi(xi)
    out = np.empty(xi_arr.shape)
    for idx, x in np.ndenumerate(xi_arr):
        central, _ = _segment_integral(table, x, 2, settings)
        total = -2.0 * x * central
        if table.low_tail:
            w1 = table.omega[0]
            e1 = table.eps_imag[0]
            total -= e1 * w1 * (
                math.atan(w1 / x) / (x * x) + w1 / (x * (x * x + w1 * w1))
            )
        if table.high_tail:
            wn = table.omega[-1]
            en = table.eps_imag[-1]
            total += en * wn**3 * (
                -2.0 / (wn * x**3)
                - wn / ((wn * wn + x * x) * x**3)
                + 3.0 * math.atan(x / wn) / x**4
            )
        out[idx] = (2.0 / PI) * total
    return float(out) if np.isscalar(xi) or np.ndim(xi) == 0 else out


@dataclass(frozen=True)
class TabulatedModel:
    """DielectricModel adapter over a PermittivityTable.

    Every eps() call runs the dispersion quadrature; wrap in MemoizedModel
    before feeding it to the force evaluators.
    """

    table: PermittivityTable

    def eps(self, xi):
        return table_eps(self.table, xi)

    def deps_dxi(self, xi):
        return table_deps_dxi(self.table, xi)


class MemoizedModel:
    """Samples a model on a log-xi grid and interpolates log(eps-1).

    The force integrals evaluate eps at every 2-D quadrature node; for
    tabulated sources this makes one dispersion transform per node, which is
    prohibitively slow.  A cubic spline of log(eps-1) vs log(xi), continued
    linearly (i.e. power-law) outside the sampled range, reproduces the
    smooth metallic permittivities in scope to spline accuracy at a few
    hundred source evaluations total.

    ``points_per_decade`` is the grid density setting; fills are computed
    once in the constructor, so instances are immutable and safe to share.
    """

    def __init__(self, model, xi_min: float, xi_max: float, points_per_decade: int = 32):
        if not (0.0 < xi_min < xi_max):
            raise DomainError("need 0 < xi_min < xi_max")
        if points_per_decade < 4:
            raise DomainError("points_per_decade must be at least 4")
        decades = math.log10(xi_max / xi_min)
        n = max(8, int(math.ceil(decades * points_per_decade)) + 1)
        y = np.linspace(math.log(xi_min), math.log(xi_max), n)
        values = np.asarray(model.eps(np.exp(y)), dtype=float)
        em1 = values - 1.0
        if np.any(em1 <= 0.0):
            raise DomainError(
                "memoization requires eps(i xi) > 1 on the grid; "
                "got eps <= 1 (log-log interpolation undefined)"
            )
        self._y_lo = y[0]
        self._y_hi = y[-1]
        self._spline = CubicSpline(y, np.log(em1), bc_type="natural")
        self._dspline = self._spline.derivative()
        self._slope_lo = float(self._dspline(self._y_lo))
        self._slope_hi = float(self._dspline(self._y_hi))
        self._val_lo = float(self._spline(self._y_lo))
        self._val_hi = float(self._spline(self._y_hi))

    def _log_em1(self, y):
        inside = self._spline(y)
        lo = self._val_lo + self._slope_lo * (y - self._y_lo)
        hi = self._val_hi + self._slope_hi * (y - self._y_hi)
        return np.where(y < self._y_lo, lo, np.where(y > self._y_hi, hi, inside))

    def _dlog_em1(self, y):
        inside = self._dspline(y)
        return np.where(
            y < self._y_lo, self._slope_lo, np.where(y > self._y_hi, self._slope_hi, inside)
        )

    def eps(self, xi):
        xi = _require_positive_xi(xi)
        y = np.log(xi)
        return 1.0 + np.exp(self._log_em1(y))

    def deps_dxi(self, xi):
        xi = _require_positive_xi(xi)
        y = np.log(xi)
        return np.exp(self._log_em1(y)) * self._dlog_em1(y) / xi
