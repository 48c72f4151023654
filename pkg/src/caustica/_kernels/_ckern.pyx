# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend: same API as pykern, C loops underneath."""

import numpy as np

cimport cython

BACKEND_NAME = "cython"


cdef inline double complex _horner2(const double complex[:, :] c, double complex x, double complex y) noexcept:
    cdef Py_ssize_t i, j
    cdef Py_ssize_t nx = c.shape[0]
    cdef Py_ssize_t ny = c.shape[1]
    cdef double complex acc = 0
    cdef double complex ry
    for i in range(nx - 1, -1, -1):
        ry = 0
        for j in range(ny - 1, -1, -1):
            ry = ry * y + c[i, j]
        acc = acc * x + ry
    return acc


def horner2(c, x, y):
    cdef const double complex[:, :] cm = np.asarray(c, dtype=np.complex128)
    return _horner2(cm, x, y)


def aberth(coeffs, z, double tol, int maxit):
    cdef const double complex[:] cs = np.asarray(coeffs, dtype=np.complex128)
    zs_arr = np.array(z, dtype=np.complex128, copy=True)
    cdef double complex[:] zs = zs_arr
    cdef Py_ssize_t n = zs.shape[0]
    cdef Py_ssize_t nc = cs.shape[0]
    cdef Py_ssize_t i, j, k
    cdef int it = 0
    cdef bint converged = False
    cdef double moved, rel
    cdef double complex zi, p, dp, ssum, denom, w, d
    while it < maxit:
        it += 1
        moved = 0.0
        for i in range(n):
            zi = zs[i]
            p = 0
            dp = 0
            for k in range(nc - 1, -1, -1):
                dp = dp * zi + p
                p = p * zi + cs[k]
            if p == 0:
                continue
            ssum = 0
            for j in range(n):
                if j != i:
                    d = zi - zs[j]
                    if d == 0:
                        d = 1e-300
                    ssum = ssum + 1.0 / d
            denom = dp - p * ssum
            if denom == 0:
                denom = 1e-300
            w = p / denom
            zs[i] = zi - w
            rel = abs(w) / (1.0 + abs(zs[i]))
            if rel > moved:
                moved = rel
        if moved < tol:
            converged = True
            break
    return zs_arr, it, converged


def newton_uni(coeffs, z0, double tol, int maxit):
    cdef const double complex[:] cs = np.asarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t nc = cs.shape[0]
    cdef Py_ssize_t k
    cdef int it
    cdef double complex z = z0
    cdef double complex p, dp, step
    for it in range(maxit):
        p = 0
        dp = 0
        for k in range(nc - 1, -1, -1):
            dp = dp * z + p
            p = p * z + cs[k]
        if dp == 0:
            break
        step = p / dp
        z = z - step
        if abs(step) <= tol * (1.0 + abs(z)):
            break
    return z


def newton2(c1, c1x, c1y, c2, c2x, c2y, x0, y0, double tol, int maxit):
    cdef const double complex[:, :] t1 = np.asarray(c1, dtype=np.complex128)
    cdef const double complex[:, :] t1x = np.asarray(c1x, dtype=np.complex128)
    cdef const double complex[:, :] t1y = np.asarray(c1y, dtype=np.complex128)
    cdef const double complex[:, :] t2 = np.asarray(c2, dtype=np.complex128)
    cdef const double complex[:, :] t2x = np.asarray(c2x, dtype=np.complex128)
    cdef const double complex[:, :] t2y = np.asarray(c2y, dtype=np.complex128)
    cdef double complex x = x0
    cdef double complex y = y0
    cdef double complex p1, p2, a, b, c, d, det, dx, dy
    cdef double res = 1e308
    cdef int it = 0
    while it < maxit:
        it += 1
        p1 = _horner2(t1, x, y)
        p2 = _horner2(t2, x, y)
        res = max(abs(p1), abs(p2))
        a = _horner2(t1x, x, y)
        b = _horner2(t1y, x, y)
        c = _horner2(t2x, x, y)
        d = _horner2(t2y, x, y)
        det = a * d - b * c
        if det == 0:
            break
        dx = (d * p1 - b * p2) / det
        dy = (a * p2 - c * p1) / det
        x = x - dx
        y = y - dy
        if abs(dx) <= tol * (1.0 + abs(x)) and abs(dy) <= tol * (1.0 + abs(y)):
            p1 = _horner2(t1, x, y)
            p2 = _horner2(t2, x, y)
            res = max(abs(p1), abs(p2))
            break
    return x, y, res, it


def det_many(mats):
    arr = np.array(mats, dtype=np.complex128, copy=True)
    cdef double complex[:, :, :] a = arr
    out_arr = np.empty(arr.shape[0], dtype=np.complex128)
    cdef double complex[:] out = out_arr
    cdef Py_ssize_t nmat = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t k, col, r, cc, piv
    cdef double best, mag
    cdef double complex det, f, tmp
    for k in range(nmat):
        det = 1.0
        for col in range(n):
            piv = col
            best = abs(a[k, col, col])
            for r in range(col + 1, n):
                mag = abs(a[k, r, col])
                if mag > best:
                    best = mag
                    piv = r
            if best == 0.0:
                det = 0.0
                break
            if piv != col:
                for cc in range(n):
                    tmp = a[k, col, cc]
                    a[k, col, cc] = a[k, piv, cc]
                    a[k, piv, cc] = tmp
                det = -det
            det = det * a[k, col, col]
            for r in range(col + 1, n):
                f = a[k, r, col] / a[k, col, col]
                if f != 0:
                    for cc in range(col + 1, n):
                        a[k, r, cc] = a[k, r, cc] - f * a[k, col, cc]
        out[k] = det
    return out_arr


def cauchy_radius(coeffs):
    cdef const double complex[:] cs = np.asarray(coeffs, dtype=np.complex128)
    cdef Py_ssize_t n = cs.shape[0]
    cdef Py_ssize_t i
    cdef double lead = abs(cs[n - 1])
    cdef double m = 0.0, r
    if lead == 0.0:
        return 1.0
    for i in range(n - 1):
        r = abs(cs[i]) / lead
        if r > m:
            m = r
    return 1.0 + m
