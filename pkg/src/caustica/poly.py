"""Complex bivariate/univariate polynomial arithmetic, Sylvester-resultant
elimination, and univariate root finding.

This is the numerical engine underneath the pre-image solver. Bivariate
polynomials are sparse term maps; univariate ones are dense ascending
coefficient tuples. All root finding is deterministic for a fixed seed.
"""

import cmath
import math
import random
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .errors import BothConstantInVar, DidNotConverge, ZeroPolynomial

_MERGE_TOL = 1e-8          # root cluster-merge radius, scaled by 1 + |z|
_LEAD_DROP_TOL = 1e-12     # numerically-vanishing leading coefficient


# ---------------------------------------------------------------------------
# bivariate polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BiPoly:
    """Sparse polynomial in (x, y) over complex coefficients.

    ``terms`` is a sorted tuple of (i, j, coeff) with i = exponent of x,
    j = exponent of y; zero coefficients are never stored.
    """

    terms: tuple

    @staticmethod
    def from_dict(d):
        items = []
        for (i, j), c in d.items():
            c = complex(c)
            if c != 0:
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                items.append((int(i), int(j), c))
        items.sort(key=lambda t: (t[0], t[1]))
        return BiPoly(tuple(items))

    @staticmethod
    def zero():
        return BiPoly(())

    @staticmethod
    def const(c):
        return BiPoly.from_dict({(0, 0): c})

    @property
    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Ordinary (total) degree; -1 for the zero polynomial."""
        return max((i + j for i, j, _ in self.terms), default=-1)

    def deg_in(self, var):
        idx = 0 if var == "x" else 1
        return max((t[idx] for t in self.terms), default=-1)

    def weighted_degree(self, a0, a1):
        if not self.terms:
            raise ZeroPolynomial("weighted degree of the zero polynomial")
        return max(a0 * i + a1 * j for i, j, _ in self.terms)

    def coeff(self, i, j):
        for ti, tj, c in self.terms:
            if ti == i and tj == j:
                return c
        return 0j

    def as_dict(self):
        return {(i, j): c for i, j, c in self.terms}

    def __add__(self, other):
        d = self.as_dict()
        for i, j, c in other.terms:
            d[(i, j)] = d.get((i, j), 0j) + c
        return BiPoly.from_dict(d)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        d = {}
        for i1, j1, c1 in self.terms:
            for i2, j2, c2 in other.terms:
                k = (i1 + i2, j1 + j2)
                d[k] = d.get(k, 0j) + c1 * c2
        return BiPoly.from_dict(d)

    def scale(self, s):
        return BiPoly(tuple((i, j, c * s) for i, j, c in self.terms)) if s != 0 else BiPoly.zero()

    def shift_const(self, c):
        """Add a constant (used to form the target-shifted system f - s)."""
        d = self.as_dict()
        d[(0, 0)] = d.get((0, 0), 0j) + complex(c)
        return BiPoly.from_dict(d)

    def max_abs_coeff(self):
        return max((abs(c) for _, _, c in self.terms), default=0.0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, j, c in sorted(self.terms, key=lambda t: (-(t[0] + t[1]), -t[0])):
            mono = "".join(s for s, e in (("x", i), ("y", j)) if e) or ""
            mono = (f"x^{i}" if i > 1 else "x" if i == 1 else "") + (
                f"y^{j}" if j > 1 else "y" if j == 1 else ""
            )
            if c.imag == 0:
                cs = f"{c.real:g}"
            else:
                cs = f"({c:g})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)


@lru_cache(maxsize=4096)
def coeff_matrix(p: BiPoly):
    """Dense (deg_x+1, deg_y+1) complex coefficient table of ``p``."""
    if p.is_zero:
        return np.zeros((1, 1), dtype=complex)
    nx = p.deg_in("x")
    ny = p.deg_in("y")
    m = np.zeros((nx + 1, ny + 1), dtype=complex)
    for i, j, c in p.terms:
        m[i, j] = c
    m.setflags(write=False)
    return m


def eval_bipoly(p: BiPoly, x, y):
    """Horner evaluation of p at a complex point."""
    if p.is_zero:
        return 0j
    return K.horner2(coeff_matrix(p), complex(x), complex(y))


def eval_bipoly_grid(p: BiPoly, xs, ys):
    """Vectorized evaluation on a meshgrid (real or complex arrays)."""
    return np.polynomial.polynomial.polyval2d(xs, ys, coeff_matrix(p))


@lru_cache(maxsize=4096)
def partial(p: BiPoly, var):
    """Formal partial derivative with respect to 'x' or 'y'."""
    if var not in ("x", "y"):
        raise ValueError("var must be 'x' or 'y'")
    d = {}
    for i, j, c in p.terms:
        if var == "x" and i > 0:
            d[(i - 1, j)] = d.get((i - 1, j), 0j) + i * c
        elif var == "y" and j > 0:
            d[(i, j - 1)] = d.get((i, j - 1), 0j) + j * c
    return BiPoly.from_dict(d)


def jacobian_det_poly(m) -> BiPoly:
    """det Jac of a plane map (f1, f2) as a polynomial in (x, y)."""
    return partial(m.f1, "x") * partial(m.f2, "y") - partial(m.f1, "y") * partial(m.f2, "x")


def jacobian_det(m, x, y):
    """det of the 2x2 Jacobian of the map at (x, y).

    Target shifts are constants, so this is independent of the target.
    """
    f1x = eval_bipoly(partial(m.f1, "x"), x, y)
    f1y = eval_bipoly(partial(m.f1, "y"), x, y)
    f2x = eval_bipoly(partial(m.f2, "x"), x, y)
    f2y = eval_bipoly(partial(m.f2, "y"), x, y)
    return f1x * f2y - f1y * f2x


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial, ascending complex coefficients.

    Exact zero leading coefficients are trimmed at construction; an empty
    tuple represents the zero polynomial.
    """

    coeffs: tuple

    @staticmethod
    def from_coeffs(seq):
        cs = [complex(c) for c in seq]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs))

    @staticmethod
    def from_coeffs_trimmed(seq, rel_tol=_LEAD_DROP_TOL):
        """Like from_coeffs but drops leading coefficients that are tiny
        relative to the largest one (for interpolated results)."""
        cs = [complex(c) for c in seq]
        m = max((abs(c) for c in cs), default=0.0)
        if m == 0.0:
            return UniPoly(())
        while cs and abs(cs[-1]) <= rel_tol * m:
            cs.pop()
        return UniPoly(tuple(cs))

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def eval(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self):
        return UniPoly.from_coeffs(tuple(k * c for k, c in enumerate(self.coeffs[1:], 1)))

    def scale(self, s):
        return UniPoly.from_coeffs(tuple(c * s for c in self.coeffs))

    def monic(self):
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lead = self.coeffs[-1]
        return UniPoly(tuple(c / lead for c in self.coeffs))


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class RootList:
    roots: tuple
    source_degree: int

    def values(self):
        return [r.value for r in self.roots]

    def with_multiplicity(self):
        for r in self.roots:
            for _ in range(r.multiplicity):
                yield r.value

    @property
    def total_count(self):
        return sum(r.multiplicity for r in self.roots)


def _closed_form_roots(cs):
    """Roots for degree 1 and 2 (ascending coefficients)."""
    if len(cs) == 2:
        return [-cs[0] / cs[1]]
    a, b, c = cs[2], cs[1], cs[0]
    disc = cmath.sqrt(b * b - 4 * a * c)
    # pick the sign that avoids cancellation in -b -/+ disc
    if (b.conjugate() * disc).real >= 0:
        q = -0.5 * (b + disc)
    else:
        q = -0.5 * (b - disc)
    r1 = q / a
    r2 = (c / q) if q != 0 else -b / a - r1
    return [r1, r2]


def _cluster_merge(zs, scale=_MERGE_TOL):
    """Union-find merge of near-coincident roots; returns (center, size) pairs."""
    n = len(zs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(zs[i] - zs[j]) <= scale * (1.0 + abs(zs[i])):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(zs[i])
    out = []
    for members in groups.values():
        center = sum(members) / len(members)
        out.append((center, len(members)))
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


def _refine_cluster_center(cs, center, mult):
    """A multiplicity-m root is a simple root of the (m-1)-th derivative;
    polishing there locates the cluster center far more accurately than the
    scattered individual approximations."""
    d = list(cs)
    for _ in range(mult - 1):
        d = [k * c for k, c in enumerate(d[1:], 1)]
    if len(d) < 2:
        return center
    return K.newton_uni(np.array(d, dtype=complex), center, 1e-15, 40)


def _reconstruction_error(cs, clusters):
    """Relative coefficient error of lead * prod (z - center)^mult vs cs."""
    rec = np.array([cs[-1]], dtype=complex)
    for center, mult in clusters:
        for _ in range(mult):
            rec = np.convolve(rec, np.array([-center, 1.0], dtype=complex))
    if rec.size != len(cs):
        return float("inf")
    scale = max(abs(c) for c in cs)
    return float(np.max(np.abs(rec - np.array(cs)))) / scale


def _best_clustering(cs, roots):
    """Cluster the raw roots at the standard merge radius; if coincident
    roots were split by numerical scatter (reconstruction off), escalate the
    merge radius and keep whichever clustering reproduces the polynomial
    best, with multiple-root centers re-polished on the derivative."""
    best = None
    best_err = float("inf")
    for radius in (_MERGE_TOL, 1e-6, 3e-5, 1e-3):
        clusters = _cluster_merge(roots, radius)
        clusters = [
            (c if m == 1 else _refine_cluster_center(cs, c, m), m) for c, m in clusters
        ]
        err = _reconstruction_error(cs, clusters)
        if err < 0.5 * best_err:
            best, best_err = clusters, err
        if err <= 1e-10:
            break
    return best


def uniroots(p: UniPoly, tol=1e-8, seed=0, maxit=120):
    """All complex roots of ``p`` with multiplicities.

    Ehrlich-Aberth simultaneous iteration from a randomly perturbed initial
    circle, Newton polish, then cluster merging of coincident roots. The
    stored residual is |p(z)| / (1 + |z|^deg) for the max-coefficient-
    normalized polynomial and must not exceed ``tol``.
    """
    if p.is_zero:
        raise ZeroPolynomial("uniroots of the zero polynomial")
    if p.degree < 1:
        raise ValueError("uniroots requires degree >= 1")

    scale = max(abs(c) for c in p.coeffs)
    cs = [c / scale for c in p.coeffs]
    deg = len(cs) - 1

    # exact zero roots deflate immediately
    nzero = 0
    while cs[0] == 0:
        cs.pop(0)
        nzero += 1

    found = []
    if len(cs) == 1:
        pass  # pure monomial: only the zero root
    elif len(cs) <= 3:
        found = _closed_form_roots(cs)
    else:
        d = len(cs) - 1
        carr = np.array(cs, dtype=complex)
        radius = K.cauchy_radius(carr)
        last_iters = 0
        for attempt in range(4):
            rng = random.Random(1000003 * (seed + 1) + attempt)
            init = np.array(
                [
                    radius
                    * cmath.exp(
                        1j * (2 * math.pi * (k + 0.374) / d + 0.5 * rng.uniform(-1, 1) * math.pi / d)
                    )
                    for k in range(d)
                ],
                dtype=complex,
            )
            roots, iters, _ = K.aberth(carr, init, 1e-14, maxit)
            last_iters += iters
            polished = [K.newton_uni(carr, z, 1e-15, 40) for z in roots]
            norm = UniPoly(tuple(cs))
            resid = [abs(norm.eval(z)) / (1.0 + abs(z) ** d) for z in polished]
            if max(resid) <= tol:
                found = polished
                break
        else:
            raise DidNotConverge("polynomial root finding failed", last_iters)

    all_roots = [0j] * nzero + list(found)
    full_norm = [c / scale for c in p.coeffs]
    # well-separated roots need no multiplicity analysis
    separated = all(
        abs(a - b) > 2e-3 * (1.0 + abs(a))
        for i, a in enumerate(all_roots)
        for b in all_roots[i + 1 :]
    )
    if separated:
        clusters = [(z, 1) for z in sorted(all_roots, key=lambda z: (z.real, z.imag))]
    else:
        clusters = _best_clustering(full_norm, all_roots)
    norm_full = UniPoly(tuple(p.coeffs))
    roots = []
    for center, mult in clusters:
        res = abs(norm_full.eval(center)) / (scale * (1.0 + abs(center) ** deg))
        roots.append(Root(value=center, multiplicity=mult, residual=res))
    if any(r.residual > tol for r in roots):
        raise DidNotConverge("root residual above tolerance", maxit)
    return RootList(roots=tuple(roots), source_degree=deg)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def _decompose(p: BiPoly, var):
    """Coefficient vectors of p in powers of ``var``; each entry is an
    ascending ndarray in the surviving variable."""
    other_idx = 1 if var == "x" else 0
    var_idx = 0 if var == "x" else 1
    n = p.deg_in(var)
    m = p.terms and max(t[other_idx] for t in p.terms) or 0
    vecs = [np.zeros(m + 1, dtype=complex) for _ in range(n + 1)]
    for t in p.terms:
        vecs[t[var_idx]][t[other_idx]] = t[2]
    return vecs


def _trim_true_degree(vecs, scale, what):
    """Drop leading coefficient vectors that vanish (exactly, or numerically
    below 1e-12 relative scale, with a warning)."""
    while len(vecs) > 1:
        top = vecs[-1]
        m = float(np.max(np.abs(top))) if top.size else 0.0
        if m == 0.0:
            vecs.pop()
        elif m < _LEAD_DROP_TOL * scale:
            warnings.warn(
                f"leading coefficient of {what} in the eliminated variable is "
                f"numerically zero ({m:.2e}); reducing degree"
            )
            vecs.pop()
        else:
            break
    return vecs


def _vec_mul(a, b):
    return np.convolve(a, b)


def _vec_sub(a, b):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=complex)
    out[: len(a)] += a
    out[: len(b)] -= b
    return out


def _sym_det(rows):
    """Laplace expansion determinant of a small matrix whose entries are
    ascending coefficient vectors."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = np.zeros(1, dtype=complex)
    for j in range(n):
        entry = rows[0][j]
        if entry is None or not np.any(entry):
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = _vec_mul(entry, _sym_det(minor))
        acc = _vec_sub(acc, -term) if j % 2 == 0 else _vec_sub(acc, term)
    return acc


def _sylvester_rows(avecs, bvecs):
    """Sylvester matrix rows (descending-coefficient layout) with coefficient
    vectors as entries."""
    npd = len(avecs) - 1
    nqd = len(bvecs) - 1
    size = npd + nqd
    zero = np.zeros(1, dtype=complex)
    rows = []
    a_desc = avecs[::-1]
    b_desc = bvecs[::-1]
    for i in range(nqd):
        rows.append([zero] * i + a_desc + [zero] * (nqd - 1 - i))
    for i in range(npd):
        rows.append([zero] * i + b_desc + [zero] * (npd - 1 - i))
    assert all(len(r) == size for r in rows)
    return rows


def _vec_pow(v, k):
    out = np.ones(1, dtype=complex)
    for _ in range(k):
        out = _vec_mul(out, v)
    return out


def resultant_eliminate(p: BiPoly, q: BiPoly, eliminate: str, force_numeric=False):
    """Res(p, q; eliminate) as a univariate polynomial in the other variable.

    Small Sylvester matrices (size <= 3, which covers every catalog family)
    are expanded symbolically over coefficient vectors, which keeps integer
    inputs exact. Larger ones go through evaluation at roots of unity with
    LU determinants and inverse-FFT interpolation.
    """
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant of the zero polynomial")
    if eliminate not in ("x", "y"):
        raise ValueError("eliminate must be 'x' or 'y'")

    avecs = _trim_true_degree(_decompose(p, eliminate), p.max_abs_coeff(), "p")
    bvecs = _trim_true_degree(_decompose(q, eliminate), q.max_abs_coeff(), "q")
    npd = len(avecs) - 1
    nqd = len(bvecs) - 1
    if npd == 0 and nqd == 0:
        raise BothConstantInVar(f"neither polynomial involves {eliminate}")
    if npd == 0:
        return UniPoly.from_coeffs(_vec_pow(avecs[0], nqd))
    if nqd == 0:
        return UniPoly.from_coeffs(_vec_pow(bvecs[0], npd))

    rows = _sylvester_rows(avecs, bvecs)
    size = npd + nqd
    if size <= 3 and not force_numeric:
        return UniPoly.from_coeffs(_sym_det(rows))

    # evaluation-interpolation: degree bound of the resultant in the survivor
    mp = max(len(v) for v in avecs) - 1
    mq = max(len(v) for v in bvecs) - 1
    bound = npd * mq + nqd * mp
    nsamp = bound + 1
    ts = np.exp(2j * np.pi * np.arange(nsamp) / nsamp)
    mats = np.zeros((nsamp, size, size), dtype=complex)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if entry is not None and entry.size:
                mats[:, i, j] = np.polynomial.polynomial.polyval(ts, entry)
    dets = K.det_many(mats)
    # dets[j] = R(w^j) with w = exp(2*pi*i/nsamp); the forward DFT over the
    # samples recovers ascending coefficients c_k = (1/N) sum_j dets_j w^(-jk)
    coeffs = np.fft.fft(dets) / nsamp
    return UniPoly.from_coeffs_trimmed(coeffs)
