# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spectral-sum kernels; see ``_fallback`` for the reference versions."""

from libc.math cimport cos, exp, fabs, sin


cdef inline void _neumaier_add(double v, double* total, double* comp) nogil:
    cdef double t = total[0] + v
    if fabs(total[0]) >= fabs(v):
        comp[0] += (total[0] - t) + v
    else:
        comp[0] += (v - t) + total[0]
    total[0] = t


def neumaier_sum(values):
    cdef double total = 0.0, comp = 0.0
    for v in values:
        _neumaier_add(<double>v, &total, &comp)
    return total + comp


def exp_weighted_sum(const double[::1] mult, const double[::1] casimir, double t):
    cdef Py_ssize_t i, m = mult.shape[0]
    cdef double total = 0.0, comp = 0.0
    with nogil:
        for i in range(m):
            _neumaier_add(mult[i] * exp(-t * casimir[i]), &total, &comp)
    return total + comp


def character_sum(const double[:, ::1] shifted, const double[::1] dims,
                  const double[::1] casimir, const double[:, ::1] hw,
                  const double[::1] signs, double den_re, double den_im, double t):
    cdef Py_ssize_t i, w, k
    cdef Py_ssize_t m = shifted.shape[0], nw = hw.shape[0], r = shifted.shape[1]
    cdef double total = 0.0, comp = 0.0
    cdef double phase, num_re, num_im, chi
    cdef double den2 = den_re * den_re + den_im * den_im
    with nogil:
        for i in range(m):
            num_re = 0.0
            num_im = 0.0
            for w in range(nw):
                phase = 0.0
                for k in range(r):
                    phase += shifted[i, k] * hw[w, k]
                num_re += signs[w] * cos(phase)
                num_im += signs[w] * sin(phase)
            chi = (num_re * den_re + num_im * den_im) / den2
            _neumaier_add(dims[i] * chi * exp(-t * casimir[i]), &total, &comp)
    return total + comp
