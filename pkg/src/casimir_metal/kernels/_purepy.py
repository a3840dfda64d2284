"""Pure-numpy integrand kernels (fallback for the compiled extension).

All functions take equal-length 1-D float64 arrays of dimensionless
quadrature nodes ``x`` (frequency-like) and ``p >= 1`` (momentum-like) and
return the integrand values.  With rho1, rho2 the first powers of the two
reflection factors and r_i = rho_i^2, each term needs r_i and the
complement 1 - r_i (the denominators are e^x - r = expm1(x) + (1 - r), the
log arguments 1 - r e^-x = -expm1(-x) + e^-x (1 - r)).

Both quantities are computed in cancellation-free form.  Writing
s = sqrt(eps-1+p^2):

    rho2 = (eps-1)/(s+p)^2              1 - rho2 = 2p/(s+p)
    rho1 = (eps-1)(1-p^2(1+eps))/(s+p*eps)^2
                                        1 + rho1 = 2s/(s+p*eps)

(the last identity because (s+p*eps)^2 + (eps-1)(1-p^2(1+eps)) collapses to
2s(s+p*eps)).  The ``*_plasma`` variants inline eps = 1 + (omega_p/xi)^2
through the single parameter ``ratio`` = (penetration depth)/(gap); with
w = ratio*x/2 and sw = sqrt(1+w^2):

    eps - 1 = (p/w)^2,   s = (p/w) sw
    rho2 = 1/(w+sw)^2
    rho1 = (w^2 (1-2p^2) - p^4) / D^2,   D = w sw + w^2 + p^2
    1 + rho1 = 2 w sw / D

so every intermediate stays finite for all w >= 0, p >= 1, even where eps
overflows a double.
"""

import numpy as np

BACKEND = "numpy"


def _plasma_refl(x, p, ratio):
    """r1, r2 and their exact complements 1-r1, 1-r2 for the plasma model."""
    w = 0.5 * ratio * x
    sw = np.sqrt(1.0 + w * w)
    q = 1.0 / (w + sw)
    rho2 = q * q
    p2 = p * p
    d = w * sw + w * w + p2
    a = w * w * (1.0 - 2.0 * p2) - p2 * p2
    rho1 = (a / d) / d

    one_p_rho1 = 2.0 * w * sw / d  # in [0, 1]: rho1 is never positive
    onemr1 = (2.0 - one_p_rho1) * one_p_rho1
    # 1 - q avoids the w -> 0 cancellation via sw - 1 = w^2/(1+sw)
    one_m_q = (w + w * w / (1.0 + sw)) / (w + sw)
    onemr2 = one_m_q * (1.0 + q) * (1.0 + rho2)

    return rho1 * rho1, rho2 * rho2, onemr1, onemr2


def plates_plasma(x, p, ratio):
    r1, r2, onemr1, onemr2 = _plasma_refl(x, p, ratio)
    em1x = np.expm1(x)
    return (x * x * x / (p * p)) * (r1 / (em1x + onemr1) + r2 / (em1x + onemr2))


def sphere_log_plasma(x, p, ratio):
    r1, r2, onemr1, onemr2 = _plasma_refl(x, p, ratio)
    emx = np.exp(-x)
    shared = -np.expm1(-x)
    return (x * x / (p * p)) * (
        np.log(shared + emx * onemr1) + np.log(shared + emx * onemr2)
    )


def sphere_parts_plasma(x, p, ratio):
    w = 0.5 * ratio * x
    sw = np.sqrt(1.0 + w * w)
    q = 1.0 / (w + sw)
    rho2 = q * q
    p2 = p * p
    d = w * sw + w * w + p2
    a = w * w * (1.0 - 2.0 * p2) - p2 * p2
    rho1 = (a / d) / d
    r1 = rho1 * rho1
    r2 = rho2 * rho2

    one_p_rho1 = 2.0 * w * sw / d
    onemr1 = (2.0 - one_p_rho1) * one_p_rho1
    one_m_q = (w + w * w / (1.0 + sw)) / (w + sw)
    onemr2 = one_m_q * (1.0 + q) * (1.0 + rho2)

    # d/dx of the squared factors via w = ratio*x/2
    r2p = -2.0 * ratio * r2 / sw
    a_w = 2.0 * w * (1.0 - 2.0 * p2)
    d_w = sw + w * w / sw + 2.0 * w
    r1p = ratio * rho1 * (a_w - 2.0 * (a / d) * d_w) / (d * d)

    em1x = np.expm1(x)
    return (x * x * x / (p * p)) * (
        (r1 - r1p) / (em1x + onemr1) + (r2 - r2p) / (em1x + onemr2)
    )


def _generic_refl(p, eps):
    em1 = eps - 1.0
    p2 = p * p
    s = np.sqrt(em1 + p2)
    sp = s + p
    spe = s + p * eps
    rho2 = (em1 / sp) / sp
    rho1 = (em1 / spe) * ((1.0 - p2 * (1.0 + eps)) / spe)

    one_p_rho1 = 2.0 * s / spe
    onemr1 = (2.0 - one_p_rho1) * one_p_rho1
    onemr2 = (2.0 * p / sp) * (1.0 + rho2)

    return rho1, rho2, onemr1, onemr2, s, sp, spe


def plates_generic(x, p, eps):
    rho1, rho2, onemr1, onemr2, _, _, _ = _generic_refl(p, eps)
    em1x = np.expm1(x)
    return (x * x * x / (p * p)) * (
        rho1 * rho1 / (em1x + onemr1) + rho2 * rho2 / (em1x + onemr2)
    )


def sphere_log_generic(x, p, eps):
    rho1, rho2, onemr1, onemr2, _, _, _ = _generic_refl(p, eps)
    emx = np.exp(-x)
    shared = -np.expm1(-x)
    return (x * x / (p * p)) * (
        np.log(shared + emx * onemr1) + np.log(shared + emx * onemr2)
    )


def sphere_parts_generic(x, p, eps, deps_dx):
    rho1, rho2, onemr1, onemr2, s, sp, spe = _generic_refl(p, eps)
    r1 = rho1 * rho1
    r2 = rho2 * rho2
    p2 = p * p
    rho2p = deps_dx * p / (s * sp * sp)
    r2p = 2.0 * rho2 * rho2p
    rho1p = deps_dx * p * ((2.0 - eps - 2.0 * p2) / spe) / (s * spe)
    r1p = 2.0 * rho1 * rho1p
    em1x = np.expm1(x)
    return (x * x * x / (p * p)) * (
        (r1 - r1p) / (em1x + onemr1) + (r2 - r2p) / (em1x + onemr2)
    )
