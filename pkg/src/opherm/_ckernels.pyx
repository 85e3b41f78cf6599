# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pykernels.py`` (same signatures)."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, fabs, M_PI, pow, isfinite

cnp.import_array()

cdef double PI_M4 = pow(M_PI, -0.25)


def wick_product(int p1, int q1, int r1, int s1, int p2, int q2, int r2, int s2):
    cdef int k, ka, kb, na, nb
    cdef object mult
    na = min(q1, p2) + 1
    nb = min(s1, r2) + 1
    mults_a = [1] * na
    mults_b = [1] * nb
    mult = 1
    for k in range(1, na):
        mult = mult * (q1 - k + 1) * (p2 - k + 1) // k
        mults_a[k] = mult
    mult = 1
    for k in range(1, nb):
        mult = mult * (s1 - k + 1) * (r2 - k + 1) // k
        mults_b[k] = mult
    out = []
    for ka in range(na):
        for kb in range(nb):
            out.append((p1 + p2 - ka, q1 + q2 - ka, r1 + r2 - kb, s1 + s2 - kb,
                        mults_a[ka] * mults_b[kb]))
    return out


def hermite_values(int n, xs):
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(np.ravel(xs), dtype=float)
    shape = np.shape(xs)
    cdef Py_ssize_t i, m = x.shape[0]
    cdef int k
    cdef double h0, h1, h2, xi
    cdef cnp.ndarray[double, ndim=1] out = np.empty(m)
    for i in range(m):
        xi = x[i]
        h0 = 1.0
        if n == 0:
            out[i] = 1.0
            continue
        h1 = 2.0 * xi
        for k in range(1, n):
            h2 = 2.0 * xi * h1 - 2.0 * k * h0
            h0 = h1
            h1 = h2
        out[i] = h1
    return out.reshape(shape)


cdef cnp.ndarray _recurrence_table(int n):
    """Rows ``alpha[j] = sqrt(2/j)`` and ``beta[j] = sqrt((j-1)/j)`` for j = 1..n."""
    cdef cnp.ndarray[double, ndim=2] tab = np.zeros((2, n + 1))
    cdef int j
    for j in range(1, n + 1):
        tab[0, j] = sqrt(2.0 / j)
        tab[1, j] = sqrt((j - 1.0) / j)
    return tab


def wavefunction_values(int n, xs):
    cdef cnp.ndarray[double, ndim=1] x = np.ascontiguousarray(np.ravel(xs), dtype=float)
    shape = np.shape(xs)
    cdef Py_ssize_t i, m = x.shape[0]
    cdef int k
    cdef double prev, cur, nxt, xi
    cdef cnp.ndarray[double, ndim=1] out = np.empty(m)
    cdef cnp.ndarray[double, ndim=2] tab = _recurrence_table(n)
    cdef double* alpha = &tab[0, 0]
    cdef double* beta = &tab[1, 0]
    for i in range(m):
        xi = x[i]
        prev = 0.0
        cur = PI_M4 * exp(-0.5 * xi * xi)
        for k in range(1, n + 1):
            nxt = alpha[k] * xi * cur - beta[k] * prev
            prev = cur
            cur = nxt
        out[i] = cur
    return out.reshape(shape)


cdef inline void _orthonormal(int k, double x, const double* alpha, const double* beta,
                              double* pk, double* pkm1) nogil:
    cdef double p1 = PI_M4, p2 = 0.0, p3
    cdef int j
    for j in range(1, k + 1):
        p3 = p2
        p2 = p1
        p1 = x * alpha[j] * p2 - beta[j] * p3
    pk[0] = p1
    pkm1[0] = p2


def gauss_hermite(int n, double tol=1e-15, int max_iter=100):
    if n < 1:
        raise ValueError("need at least one node")
    cdef cnp.ndarray[double, ndim=1] roots = np.zeros(n)
    cdef cnp.ndarray[double, ndim=1] prev = np.zeros(n)
    cdef cnp.ndarray[double, ndim=1] weights = np.empty(n)
    cdef int k, j, it
    cdef double lo, hi, x, f, fp, f_lo, fdummy, df, step, outer
    cdef cnp.ndarray[double, ndim=2] tab = _recurrence_table(n)
    cdef double* alpha = &tab[0, 0]
    cdef double* beta = &tab[1, 0]
    for k in range(2, n + 1):
        for j in range(k - 1):
            prev[j] = roots[j]
        outer = sqrt(2.0 * k + 1.0)
        for j in range(k):
            lo = -outer if j == 0 else prev[j - 1]
            hi = outer if j == k - 1 else prev[j]
            _orthonormal(k, lo, alpha, beta, &f_lo, &fdummy)
            x = 0.5 * (lo + hi)
            for it in range(max_iter):
                _orthonormal(k, x, alpha, beta, &f, &fp)
                df = sqrt(2.0 * k) * fp
                if (f > 0) == (f_lo > 0) and f != 0.0:
                    lo = x
                    f_lo = f
                else:
                    hi = x
                step = x - f / df
                if not isfinite(step) or step < lo or step > hi:
                    step = 0.5 * (lo + hi)
                if fabs(step - x) <= tol * max(1.0, fabs(x)):
                    x = step
                    break
                x = step
            roots[j] = x
    for j in range(n):
        _orthonormal(n, roots[j], alpha, beta, &f, &fp)
        weights[j] = 2.0 / (2.0 * n * fp * fp)
    return roots, weights
