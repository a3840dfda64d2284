"""Closed-form finite-conductivity correction series in delta0/a.

The correction factor to the ideal-metal result, through fourth order in the
relative penetration depth r = delta0/a, is

    plates: 1 - (16/3) r + 24 r^2 - (640/7)(1 - pi^2/210) r^3
                              + (2800/9)(1 - 163 pi^2/7350) r^4
    sphere: 1 -      4 r + (72/5) r^2 - (320/7)(1 - pi^2/210) r^3
                              + (400/3)(1 - 163 pi^2/7350) r^4

Each coefficient is stored as an exact rational plus a rational multiple of
pi^2 and evaluated to a float exactly once, so the proximity-force-theorem
relation c_k(sphere) = 3/(3+k) c_k(plates) holds to machine roundoff rather
than to decimal-truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constants import PI
from .errors import DomainError

__all__ = [
    "SeriesCoefficients",
    "SeriesFactor",
    "series_coefficients",
    "correction_factor_series",
    "pft_order_consistency",
    "interpolation_comparison",
    "INTERPOLATION_C3",
    "INTERPOLATION_C4",
    "SERIES_VALIDITY_RATIO",
]

_PI2 = PI * PI

# (rational part, coefficient of pi^2) per order 1..4
_EXACT = {
    "plates": (
        (Fraction(-16, 3), Fraction(0)),
        (Fraction(24), Fraction(0)),
        (Fraction(-640, 7), Fraction(640, 7 * 210)),
        (Fraction(2800, 9), Fraction(-2800 * 163, 9 * 7350)),
    ),
    "sphere": (
        (Fraction(-4), Fraction(0)),
        (Fraction(72, 5), Fraction(0)),
        (Fraction(-320, 7), Fraction(320, 7 * 210)),
        (Fraction(400, 3), Fraction(-400 * 163, 3 * 7350)),
    ),
}

# third/fourth-order sphere coefficients of the older interpolation-formula
# treatment, kept for discrepancy reporting
INTERPOLATION_C3 = -50.67
INTERPOLATION_C4 = +177.33

# the series is quoted as reliable for gaps at or above one plasma
# wavelength, i.e. r = delta0/a <= 1/(2 pi)
SERIES_VALIDITY_RATIO = 1.0 / (2.0 * PI)

# beyond this the quartic is plainly meaningless (hard absurdity guard)
SERIES_ABSURD_RATIO = 0.5


def _float_coeffs(geometry: str) -> tuple[float, float, float, float]:
    try:
        exact = _EXACT[geometry]
    except KeyError:
        raise ValueError(f"geometry must be 'plates' or 'sphere', got {geometry!r}") from None
    return tuple(float(rat) + float(pi2) * _PI2 for rat, pi2 in exact)


@dataclass(frozen=True)
class SeriesCoefficients:
    """The four series coefficients for one geometry."""

    geometry: str
    c1: float
    c2: float
    c3: float
    c4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.c1, self.c2, self.c3, self.c4)


def series_coefficients(geometry: str) -> SeriesCoefficients:
    """Exact-closed-form coefficients, evaluated to floats."""
    return SeriesCoefficients(geometry, *_float_coeffs(geometry))


@dataclass(frozen=True)
class SeriesFactor:
    """A series-evaluated correction factor plus a validity flag.

    ``beyond_validity`` is set when the expansion parameter exceeds the
    absurdity guard of 0.5; the value is still returned.
    """

    value: float
    ratio: float
    order: int
    beyond_validity: bool


def correction_factor_series(geometry: str, ratio: float, order: int = 4) -> SeriesFactor:
    """Partial sum 1 + sum_{k<=order} c_k ratio^k of the correction factor."""
    if not (isinstance(order, int) and 0 <= order <= 4):
        raise ValueError(f"order must be an integer in 0..4, got {order!r}")
    if ratio < 0.0:
        raise DomainError("ratio delta0/a must be nonnegative")
    coeffs = _float_coeffs(geometry)
    value = 1.0
    rk = 1.0
    for k in range(order):
        rk *= ratio
        value += coeffs[k] * rk
    return SeriesFactor(value, ratio, order, ratio > SERIES_ABSURD_RATIO)


def pft_order_consistency() -> list[tuple[int, float]]:
    """Residuals |c_k(sphere) - 3/(3+k) c_k(plates)| for k = 1..4.

    All four vanish to roundoff: the sphere series is the a-antiderivative
    of the plate series times 2 pi R, order by order.
    """
    plates = series_coefficients("plates").as_tuple()
    sphere = series_coefficients("sphere").as_tuple()
    out = []
    for k in range(1, 5):
        out.append((k, abs(sphere[k - 1] - 3.0 / (3.0 + k) * plates[k - 1])))
    return out


def interpolation_comparison(ratio: float) -> float:
    """Discrepancy between the exact and interpolation-formula sphere series.

    Returns |(c3_int - c3) r^3 + (c4_int - c4) r^4|, the absolute difference
    of the two order-4 correction factors (equivalently, the force
    discrepancy as a fraction of the ideal force).  At r = 0.13 this is
    about 0.0053, i.e. half a percent.
    """
    if ratio < 0.0:
        raise DomainError("ratio delta0/a must be nonnegative")
    _, _, c3, c4 = _float_coeffs("sphere")
    r3 = ratio**3
    return abs((INTERPOLATION_C3 - c3) * r3 + (INTERPOLATION_C4 - c4) * r3 * ratio)
