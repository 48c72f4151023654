"""Pure-Python kernel backend.

Mirrors the API of the compiled backend (``_ckern``). Inputs arrive as numpy
arrays; the hot loops below run on plain Python complex scalars, which for
the tiny problem sizes here (polynomial degree <= 10, matrices <= 12x12)
beats per-call numpy dispatch overhead.
"""

import numpy as np

BACKEND_NAME = "python"


def horner2(c, x, y):
    """Evaluate sum c[i][j] x^i y^j by nested Horner recursion."""
    rows = c.tolist() if isinstance(c, np.ndarray) else c
    acc = 0j
    for row in reversed(rows):
        ry = 0j
        for cv in reversed(row):
            ry = ry * y + cv
        acc = acc * x + ry
    return acc


def _eval_and_deriv(coeffs, z):
    # coeffs ascending; Horner for p(z) and p'(z) simultaneously
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs, z, tol, maxit):
    """Ehrlich-Aberth simultaneous iteration from initial guesses ``z``.

    Returns (roots, iterations, converged). ``coeffs`` ascending, leading
    coefficient nonzero; len(z) must equal the degree.
    """
    cs = list(coeffs.tolist() if isinstance(coeffs, np.ndarray) else coeffs)
    zs = list(z.tolist() if isinstance(z, np.ndarray) else z)
    n = len(zs)
    it = 0
    converged = False
    while it < maxit:
        it += 1
        moved = 0.0
        for i in range(n):
            zi = zs[i]
            p, dp = _eval_and_deriv(cs, zi)
            if p == 0:
                continue
            ssum = 0j
            for j in range(n):
                if j != i:
                    d = zi - zs[j]
                    if d == 0:
                        d = 1e-300
                    ssum += 1.0 / d
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
    return np.array(zs, dtype=complex), it, converged


def newton_uni(coeffs, z0, tol, maxit):
    """Newton polish of a single root of an ascending-coefficient polynomial."""
    cs = list(coeffs.tolist() if isinstance(coeffs, np.ndarray) else coeffs)
    z = complex(z0)
    for _ in range(maxit):
        p, dp = _eval_and_deriv(cs, z)
        if dp == 0:
            break
        step = p / dp
        z -= step
        if abs(step) <= tol * (1.0 + abs(z)):
            break
    return z


def newton2(c1, c1x, c1y, c2, c2x, c2y, x, y, tol, maxit):
    """Damped-free 2x2 Newton for the system (P1, P2) given coefficient
    tables of both polynomials and their four partials.

    Returns (x, y, residual, iterations) with residual = max(|P1|, |P2|).
    """
    t1 = c1.tolist() if isinstance(c1, np.ndarray) else c1
    t1x = c1x.tolist() if isinstance(c1x, np.ndarray) else c1x
    t1y = c1y.tolist() if isinstance(c1y, np.ndarray) else c1y
    t2 = c2.tolist() if isinstance(c2, np.ndarray) else c2
    t2x = c2x.tolist() if isinstance(c2x, np.ndarray) else c2x
    t2y = c2y.tolist() if isinstance(c2y, np.ndarray) else c2y
    x = complex(x)
    y = complex(y)
    it = 0
    res = float("inf")
    while it < maxit:
        it += 1
        p1 = horner2(t1, x, y)
        p2 = horner2(t2, x, y)
        res = max(abs(p1), abs(p2))
        a = horner2(t1x, x, y)
        b = horner2(t1y, x, y)
        c = horner2(t2x, x, y)
        d = horner2(t2y, x, y)
        det = a * d - b * c
        if det == 0:
            break
        dx = (d * p1 - b * p2) / det
        dy = (a * p2 - c * p1) / det
        x -= dx
        y -= dy
        if abs(dx) <= tol * (1.0 + abs(x)) and abs(dy) <= tol * (1.0 + abs(y)):
            p1 = horner2(t1, x, y)
            p2 = horner2(t2, x, y)
            res = max(abs(p1), abs(p2))
            break
    return x, y, res, it


def det_many(mats):
    """Determinants of a stack of small complex matrices (LU, partial pivoting)."""
    mats = np.asarray(mats, dtype=complex)
    out = np.empty(mats.shape[0], dtype=complex)
    for k in range(mats.shape[0]):
        a = [row[:] for row in mats[k].tolist()]
        n = len(a)
        det = 1.0 + 0j
        for col in range(n):
            piv = max(range(col, n), key=lambda r: abs(a[r][col]))
            if abs(a[piv][col]) == 0.0:
                det = 0j
                break
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                det = -det
            det *= a[col][col]
            inv = 1.0 / a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] * inv
                if f != 0:
                    arow = a[r]
                    acol = a[col]
                    for cc in range(col + 1, n):
                        arow[cc] -= f * acol[cc]
        out[k] = det
    return out


def cauchy_radius(coeffs):
    """1 + max |c_i / c_d| root bound for an ascending coefficient list."""
    cs = list(coeffs.tolist() if isinstance(coeffs, np.ndarray) else coeffs)
    lead = abs(cs[-1])
    if lead == 0.0:
        return 1.0
    m = 0.0
    for c in cs[:-1]:
        r = abs(c) / lead
        if r > m:
            m = r
    return 1.0 + m


__all__ = [
    "BACKEND_NAME",
    "horner2",
    "aberth",
    "newton_uni",
    "newton2",
    "det_many",
    "cauchy_radius",
]
