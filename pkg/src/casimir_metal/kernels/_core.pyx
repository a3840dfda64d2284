# Compiled integrand kernels. Mirrors _purepy.py exactly; keep the two in
# sync (tests/test_kernels.py enforces agreement to near machine precision).
# See _purepy.py for the algebra, in particular the cancellation-free
# complements 1 - r used in the denominators.

from libc.math cimport exp, expm1, log, sqrt

import numpy as np

BACKEND = "compiled"


cdef inline void _plasma_refl(double x, double p, double ratio,
                              double *r1, double *r2,
                              double *onemr1, double *onemr2) nogil:
    cdef double w = 0.5 * ratio * x
    cdef double sw = sqrt(1.0 + w * w)
    cdef double q = 1.0 / (w + sw)
    cdef double rho2 = q * q
    cdef double p2 = p * p
    cdef double d = w * sw + w * w + p2
    cdef double a = w * w * (1.0 - 2.0 * p2) - p2 * p2
    cdef double rho1 = (a / d) / d
    cdef double one_p_rho1 = 2.0 * w * sw / d
    cdef double one_m_q = (w + w * w / (1.0 + sw)) / (w + sw)
    r1[0] = rho1 * rho1
    r2[0] = rho2 * rho2
    onemr1[0] = (2.0 - one_p_rho1) * one_p_rho1
    onemr2[0] = one_m_q * (1.0 + q) * (1.0 + rho2)


def plates_plasma(double[::1] x, double[::1] p, double ratio):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double r1, r2, onemr1, onemr2, em1x
    with nogil:
        for i in range(n):
            _plasma_refl(x[i], p[i], ratio, &r1, &r2, &onemr1, &onemr2)
            em1x = expm1(x[i])
            out[i] = (x[i] * x[i] * x[i] / (p[i] * p[i])) * (
                r1 / (em1x + onemr1) + r2 / (em1x + onemr2))
    return out_arr


def sphere_log_plasma(double[::1] x, double[::1] p, double ratio):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double r1, r2, onemr1, onemr2, emx, shared
    with nogil:
        for i in range(n):
            _plasma_refl(x[i], p[i], ratio, &r1, &r2, &onemr1, &onemr2)
            emx = exp(-x[i])
            shared = -expm1(-x[i])
            out[i] = (x[i] * x[i] / (p[i] * p[i])) * (
                log(shared + emx * onemr1) + log(shared + emx * onemr2))
    return out_arr


def sphere_parts_plasma(double[::1] x, double[::1] p, double ratio):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double w, sw, q, rho2, p2, d, a, rho1, r1, r2
    cdef double one_p_rho1, one_m_q, onemr1, onemr2
    cdef double r2p, a_w, d_w, r1p, em1x
    with nogil:
        for i in range(n):
            w = 0.5 * ratio * x[i]
            sw = sqrt(1.0 + w * w)
            q = 1.0 / (w + sw)
            rho2 = q * q
            p2 = p[i] * p[i]
            d = w * sw + w * w + p2
            a = w * w * (1.0 - 2.0 * p2) - p2 * p2
            rho1 = (a / d) / d
            r1 = rho1 * rho1
            r2 = rho2 * rho2
            one_p_rho1 = 2.0 * w * sw / d
            onemr1 = (2.0 - one_p_rho1) * one_p_rho1
            one_m_q = (w + w * w / (1.0 + sw)) / (w + sw)
            onemr2 = one_m_q * (1.0 + q) * (1.0 + rho2)
            r2p = -2.0 * ratio * r2 / sw
            a_w = 2.0 * w * (1.0 - 2.0 * p2)
            d_w = sw + w * w / sw + 2.0 * w
            r1p = ratio * rho1 * (a_w - 2.0 * (a / d) * d_w) / (d * d)
            em1x = expm1(x[i])
            out[i] = (x[i] * x[i] * x[i] / p2) * (
                (r1 - r1p) / (em1x + onemr1) + (r2 - r2p) / (em1x + onemr2))
    return out_arr


cdef inline void _generic_refl(double p, double eps,
                               double *rho1, double *rho2,
                               double *onemr1, double *onemr2,
                               double *s, double *sp, double *spe) nogil:
    cdef double em1 = eps - 1.0
    cdef double p2 = p * p
    cdef double sv = sqrt(em1 + p2)
    cdef double spv = sv + p
    cdef double spev = sv + p * eps
    cdef double rho2v = (em1 / spv) / spv
    cdef double one_p_rho1 = 2.0 * sv / spev
    rho1[0] = (em1 / spev) * ((1.0 - p2 * (1.0 + eps)) / spev)
    rho2[0] = rho2v
    onemr1[0] = (2.0 - one_p_rho1) * one_p_rho1
    onemr2[0] = (2.0 * p / spv) * (1.0 + rho2v)
    s[0] = sv
    sp[0] = spv
    spe[0] = spev


def plates_generic(double[::1] x, double[::1] p, double[::1] eps):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double rho1, rho2, onemr1, onemr2, s, sp, spe, em1x
    with nogil:
        for i in range(n):
            _generic_refl(p[i], eps[i], &rho1, &rho2, &onemr1, &onemr2,
                          &s, &sp, &spe)
            em1x = expm1(x[i])
            out[i] = (x[i] * x[i] * x[i] / (p[i] * p[i])) * (
                rho1 * rho1 / (em1x + onemr1) + rho2 * rho2 / (em1x + onemr2))
    return out_arr


def sphere_log_generic(double[::1] x, double[::1] p, double[::1] eps):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double rho1, rho2, onemr1, onemr2, s, sp, spe, emx, shared
    with nogil:
        for i in range(n):
            _generic_refl(p[i], eps[i], &rho1, &rho2, &onemr1, &onemr2,
                          &s, &sp, &spe)
            emx = exp(-x[i])
            shared = -expm1(-x[i])
            out[i] = (x[i] * x[i] / (p[i] * p[i])) * (
                log(shared + emx * onemr1) + log(shared + emx * onemr2))
    return out_arr


def sphere_parts_generic(double[::1] x, double[::1] p, double[::1] eps,
                         double[::1] deps_dx):
    cdef Py_ssize_t n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double rho1, rho2, onemr1, onemr2, s, sp, spe
    cdef double r1, r2, p2, rho2p, r2p, rho1p, r1p, em1x
    with nogil:
        for i in range(n):
            _generic_refl(p[i], eps[i], &rho1, &rho2, &onemr1, &onemr2,
                          &s, &sp, &spe)
            r1 = rho1 * rho1
            r2 = rho2 * rho2
            p2 = p[i] * p[i]
            rho2p = deps_dx[i] * p[i] / (s * sp * sp)
            r2p = 2.0 * rho2 * rho2p
            rho1p = deps_dx[i] * p[i] * ((2.0 - eps[i] - 2.0 * p2) / spe) / (s * spe)
            r1p = 2.0 * rho1 * rho1p
            em1x = expm1(x[i])
            out[i] = (x[i] * x[i] * x[i] / p2) * (
                (r1 - r1p) / (em1x + onemr1) + (r2 - r2p) / (em1x + onemr2))
    return out_arr
