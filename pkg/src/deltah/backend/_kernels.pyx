# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: complex log-gamma, digamma, and gamma-ratio sums.

Scalar routines use Stirling's series after an upward recurrence push, with
reflection into the right half-plane; branch bookkeeping matches the
principal-branch convention of the SciPy fallback (continuation from the
positive real axis, negative real axis approached from above).
"""

import numpy as np

cimport numpy as cnp

from libc.math cimport M_PI, NAN, floor

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex clog(double complex)
    double complex cexp(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)

NAME = "compiled"

cdef double LOG_SQRT_2PI = 0.9189385332046727417803297364
cdef double LOG_PI = 1.1447298858494001741434273513
cdef double LOG_2 = 0.6931471805599453094172321215

# B_{2k} / (2k (2k-1)) for the log-gamma Stirling tail
cdef double[10] STIR
STIR[0] = 1.0 / 12.0
STIR[1] = -1.0 / 360.0
STIR[2] = 1.0 / 1260.0
STIR[3] = -1.0 / 1680.0
STIR[4] = 1.0 / 1188.0
STIR[5] = -691.0 / 360360.0
STIR[6] = 1.0 / 156.0
STIR[7] = -3617.0 / 122400.0
STIR[8] = 43867.0 / 244188.0
STIR[9] = -174611.0 / 125400.0

# B_{2k} / (2k) for the digamma Stirling tail
cdef double[8] STIR_PSI
STIR_PSI[0] = 1.0 / 12.0
STIR_PSI[1] = -1.0 / 120.0
STIR_PSI[2] = 1.0 / 252.0
STIR_PSI[3] = -1.0 / 240.0
STIR_PSI[4] = 1.0 / 132.0
STIR_PSI[5] = -691.0 / 32760.0
STIR_PSI[6] = 1.0 / 12.0
STIR_PSI[7] = -3617.0 / 8160.0

cdef double PUSH_RADIUS = 10.0


cdef inline bint _is_nonpositive_int(double complex z) nogil:
    cdef double re = creal(z)
    if cimag(z) != 0.0:
        return 0
    return re <= 0.0 and re == floor(re)


cdef double complex _loggamma_stirling(double complex w) nogil:
    # |w| >= PUSH_RADIUS, Re(w) >= 0.5
    cdef double complex iw2 = 1.0 / (w * w)
    cdef double complex tail = STIR[9]
    cdef int k
    for k in range(8, -1, -1):
        tail = tail * iw2 + STIR[k]
    return (w - 0.5) * clog(w) - w + LOG_SQRT_2PI + tail / w


cdef double complex _log1p_c(double complex x) nogil:
    # |x| < 1 in all uses here
    cdef double complex u = 1.0 + x
    if creal(u) == 1.0 and cimag(u) == 0.0:
        return x
    return clog(u) * (x / (u - 1.0))


cdef double complex _logsin_pi_upper(double complex z) nogil:
    # analytic continuation of log(sin(pi z)) from (0,1) into Im z >= 0:
    # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})
    cdef double complex q = cexp(2j * M_PI * z)
    return -1j * M_PI * (z - 0.5) - LOG_2 + _log1p_c(-q)


cdef double complex _loggamma_right(double complex z) nogil:
    # Re(z) >= 0.5: recurrence push then Stirling
    cdef double complex acc = 0.0
    while cabs(z) < PUSH_RADIUS:
        acc += clog(z)
        z += 1.0
    return _loggamma_stirling(z) - acc


cdef double complex loggamma_c(double complex z) nogil:
    if cimag(z) < 0.0:
        return loggamma_c(creal(z) - 1j * cimag(z)).conjugate()
    if creal(z) >= 0.5:
        return _loggamma_right(z)
    # reflection: logGamma(z) = log(pi) - logsin(pi z) - logGamma(1 - z);
    # 1 - z has Re >= 0.5 and Im <= 0
    return (LOG_PI - _logsin_pi_upper(z)
            - loggamma_c(1.0 - z))


cdef double complex _digamma_stirling(double complex w) nogil:
    cdef double complex iw2 = 1.0 / (w * w)
    cdef double complex tail = STIR_PSI[7]
    cdef int k
    for k in range(6, -1, -1):
        tail = tail * iw2 + STIR_PSI[k]
    return clog(w) - 0.5 / w - tail * iw2


cdef double complex _digamma_right(double complex z) nogil:
    cdef double complex acc = 0.0
    while cabs(z) < PUSH_RADIUS:
        acc += 1.0 / z
        z += 1.0
    return _digamma_stirling(z) - acc


cdef double complex digamma_c(double complex z) nogil:
    cdef double complex q
    if cimag(z) < 0.0:
        return digamma_c(creal(z) - 1j * cimag(z)).conjugate()
    if creal(z) >= 0.5:
        return _digamma_right(z)
    # psi(z) = psi(1-z) - pi cot(pi z); for Im z >= 0 with q = e^{2 pi i z}:
    # pi cot(pi z) = -i pi (1 + q) / (1 - q)
    q = cexp(2j * M_PI * z)
    return digamma_c(1.0 - z) + 1j * M_PI * (1.0 + q) / (1.0 - q)


def loggamma(object zarr):
    """Principal-branch log-gamma on a complex array (NaN at poles)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = \
        np.ascontiguousarray(np.atleast_1d(zarr), dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty_like(z)
    cdef Py_ssize_t i, n = z.shape[0]
    with nogil:
        for i in range(n):
            if _is_nonpositive_int(z[i]):
                out[i] = NAN + 1j * NAN
            else:
                out[i] = loggamma_c(z[i])
    return out.reshape(np.shape(zarr)) if np.ndim(zarr) else out[0]


def digamma(object zarr):
    """Digamma on a complex array (NaN at poles)."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] z = \
        np.ascontiguousarray(np.atleast_1d(zarr), dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty_like(z)
    cdef Py_ssize_t i, n = z.shape[0]
    with nogil:
        for i in range(n):
            if _is_nonpositive_int(z[i]):
                out[i] = NAN + 1j * NAN
            else:
                out[i] = digamma_c(z[i])
    return out.reshape(np.shape(zarr)) if np.ndim(zarr) else out[0]


def log_gamma_ratio(object num_scale, object num_shift,
                    object den_scale, object den_shift, object sarr):
    """sum_k logGamma(A_k s + a_k) - sum_j logGamma(B_j s + b_j) over nodes s."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ws_n = \
        np.ascontiguousarray(num_scale, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sh_n = \
        np.ascontiguousarray(num_shift, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ws_d = \
        np.ascontiguousarray(den_scale, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sh_d = \
        np.ascontiguousarray(den_shift, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] s = \
        np.ascontiguousarray(np.atleast_1d(sarr), dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros_like(s)
    cdef Py_ssize_t i, k, n = s.shape[0]
    cdef Py_ssize_t p = ws_n.shape[0], q = ws_d.shape[0]
    cdef double complex acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for k in range(p):
                acc = acc + loggamma_c(ws_n[k] * s[i] + sh_n[k])
            for k in range(q):
                acc = acc - loggamma_c(ws_d[k] * s[i] + sh_d[k])
            out[i] = acc
    return out.reshape(np.shape(sarr)) if np.ndim(sarr) else out[0]


def digamma_ratio_weight(object num_scale, object num_shift,
                         object den_scale, object den_shift, object sarr):
    """sum_j B_j psi(B_j s + b_j) - sum_k A_k psi(A_k s + a_k) over nodes s."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ws_n = \
        np.ascontiguousarray(num_scale, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sh_n = \
        np.ascontiguousarray(num_shift, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ws_d = \
        np.ascontiguousarray(den_scale, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sh_d = \
        np.ascontiguousarray(den_shift, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] s = \
        np.ascontiguousarray(np.atleast_1d(sarr), dtype=np.complex128).ravel()
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros_like(s)
    cdef Py_ssize_t i, k, n = s.shape[0]
    cdef Py_ssize_t p = ws_n.shape[0], q = ws_d.shape[0]
    cdef double complex acc
    with nogil:
        for i in range(n):
            acc = 0.0
            for k in range(q):
                acc = acc + ws_d[k] * digamma_c(ws_d[k] * s[i] + sh_d[k])
            for k in range(p):
                acc = acc - ws_n[k] * digamma_c(ws_n[k] * s[i] + sh_n[k])
            out[i] = acc
    return out.reshape(np.shape(sarr)) if np.ndim(sarr) else out[0]
