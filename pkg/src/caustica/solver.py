"""Pre-image solving and signed magnifications.

Targets are solved by resultant elimination of one variable, univariate
root finding on the eliminant, back-substitution, and a 2x2 Newton polish
of every candidate. The signed magnification of a pre-image is the
reciprocal Jacobian determinant there; summed over all complex pre-images
it vanishes for every catalog family (certified independently by the
residue module).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels as K
from .catalog import FamilyId, PlaneMap, assigned_weights, elimination_variable
from .errors import CausticaError, CausticTarget, DegenerateSystem, OnCriticalCurve
from .poly import (
    BiPoly,
    UniPoly,
    coeff_matrix,
    eval_bipoly,
    eval_bipoly_grid,
    jacobian_det,
    jacobian_det_poly,
    partial,
    resultant_eliminate,
    uniroots,
)

RESIDUAL_TOL = 1e-9        # |f(x,y) - s| <= RESIDUAL_TOL * (1 + |s|)
REAL_TOL = 1e-8            # imaginary part threshold, scaled by 1 + |x| + |y|
CAUSTIC_REL_TOL = 1e-6     # fraction of the family's unit-box |det Jac| scale
_DEDUP_TOL = 1e-8


@dataclass(frozen=True)
class TargetPoint:
    s1: complex
    s2: complex

    @staticmethod
    def of(s):
        if isinstance(s, TargetPoint):
            return s
        return TargetPoint(complex(s[0]), complex(s[1]))

    @property
    def norm(self):
        return math.hypot(abs(self.s1), abs(self.s2))


@dataclass(frozen=True)
class Preimage:
    x: complex
    y: complex
    magnification: complex
    jac_det: complex
    residual: float
    is_real: bool
    multiplicity: int = 1


@dataclass(frozen=True)
class PreimageSet:
    preimages: tuple
    bezout_expected: int
    family: FamilyId
    target: TargetPoint
    certified_noncaustic: bool

    @property
    def total_count(self):
        return sum(p.multiplicity for p in self.preimages)

    @property
    def real_preimages(self):
        return tuple(p for p in self.preimages if p.is_real)

    @property
    def min_abs_jac(self):
        return min((abs(p.jac_det) for p in self.preimages), default=float("inf"))


@lru_cache(maxsize=512)
def caustic_scale(m: PlaneMap) -> float:
    """Median |det Jac| of the map over a fixed unit-box sample; sets the
    scale against which near-caustic targets are rejected."""
    jpoly = jacobian_det_poly(m)
    pts = np.linspace(-1.0, 1.0, 8)
    xs, ys = np.meshgrid(pts, pts)
    vals = np.abs(eval_bipoly_grid(jpoly, xs, ys)).ravel()
    nz = vals[vals > 1e-12 * max(vals.max(), 1.0)]
    return float(np.median(nz)) if nz.size else 1.0


def caustic_tolerance(m: PlaneMap) -> float:
    return CAUSTIC_REL_TOL * caustic_scale(m)


def magnification(m: PlaneMap, x, y):
    """1 / det(Jac f) at (x, y); raises OnCriticalCurve when the Jacobian
    determinant is below the family's caustic tolerance."""
    j = jacobian_det(m, x, y)
    if abs(j) <= caustic_tolerance(m):
        raise OnCriticalCurve(f"|det Jac| = {abs(j):.3e} at ({x}, {y}) is below tolerance")
    return 1.0 / j


def weighted_bezout_count(m: PlaneMap) -> int:
    w = assigned_weights(m.family)
    num = m.d1 * m.d2
    den = w.a0 * w.a1
    assert num % den == 0
    return num // den


@lru_cache(maxsize=512)
def _plan(m: PlaneMap):
    """Per-map solve plan: elimination variable, Newton coefficient tables,
    coefficient-vector decompositions, and (when verified) the eliminant's
    polynomial dependence on the target, so each solve costs one small
    tensor contraction instead of a fresh Sylvester expansion."""
    elim = elimination_variable(m.family)
    mats = (
        np.array(coeff_matrix(m.f1)),
        np.array(coeff_matrix(partial(m.f1, "x"))),
        np.array(coeff_matrix(partial(m.f1, "y"))),
        np.array(coeff_matrix(m.f2)),
        np.array(coeff_matrix(partial(m.f2, "x"))),
        np.array(coeff_matrix(partial(m.f2, "y"))),
    )

    def decomp(f):
        n = max(f.deg_in(elim), 0)
        other = max((j if elim == "x" else i for i, j, _ in f.terms), default=0)
        vecs = [[0j] * (other + 1) for _ in range(n + 1)]
        for i, j, c in f.terms:
            k, e = (i, j) if elim == "x" else (j, i)
            vecs[k][e] += c
        return tuple(tuple(v) for v in vecs)

    vecs1 = decomp(m.f1)
    vecs2 = decomp(m.f2)

    # eliminant(s1, s2) has degree <= deg_elim(P2) in s1 and <= deg_elim(P1)
    # in s2 (multilinearity of the Sylvester determinant in its rows)
    n1 = len(vecs1) - 1
    n2 = len(vecs2) - 1
    samples = (0.0, 1.0, -1.0, 2.0, -2.0, 3.0)
    us = samples[: n2 + 1]
    vs = samples[: n1 + 1]
    direct = {}
    length = 0
    try:
        for u in us:
            for v in vs:
                r = resultant_eliminate(m.f1.shift_const(-u), m.f2.shift_const(-v), elim)
                direct[(u, v)] = r.coeffs
                length = max(length, len(r.coeffs))
        grid = np.zeros((len(us), len(vs), length), dtype=complex)
        for a, u in enumerate(us):
            for b, v in enumerate(vs):
                cs = direct[(u, v)]
                grid[a, b, : len(cs)] = cs
        vu = np.vander(np.array(us), increasing=True)
        vv = np.vander(np.array(vs), increasing=True)
        t1 = np.linalg.solve(vu, grid.reshape(len(us), -1)).reshape(grid.shape)
        basis = np.linalg.solve(vv, t1.transpose(1, 0, 2).reshape(len(vs), -1)).reshape(
            len(vs), len(us), length
        ).transpose(1, 0, 2)
        # verify against the direct path at an unrelated target
        s1c, s2c = 0.37, -1.23
        check = resultant_eliminate(m.f1.shift_const(-s1c), m.f2.shift_const(-s2c), elim)
        p1 = s1c ** np.arange(len(us))
        p2 = s2c ** np.arange(len(vs))
        vec = np.einsum("i,j,ijl->l", p1, p2, basis)
        ref = np.zeros(length, dtype=complex)
        ref[: len(check.coeffs)] = check.coeffs
        scale = max(np.max(np.abs(ref)), 1e-30)
        if np.max(np.abs(vec - ref)) > 1e-9 * scale:
            basis = None
    except (CausticaError, np.linalg.LinAlgError):  # fall back to direct solves
        basis = None
    return elim, mats, vecs1, vecs2, basis


def _eliminant_for_target(m: PlaneMap, plan, tgt: TargetPoint):
    elim, _, _, _, basis = plan
    if basis is None:
        return resultant_eliminate(m.f1.shift_const(-tgt.s1), m.f2.shift_const(-tgt.s2), elim)
    p1 = tgt.s1 ** np.arange(basis.shape[0])
    p2 = tgt.s2 ** np.arange(basis.shape[1])
    vec = np.einsum("i,j,ijl->l", p1, p2, basis)
    return UniPoly.from_coeffs_trimmed(vec)


def _elim_candidates(plan, tgt: TargetPoint, t):
    """Candidate values of the eliminated variable over a fixed survivor
    value t: roots of each shifted polynomial of elimination degree >= 1
    there (they all have degree <= 2 in the catalog)."""
    _, _, vecs1, vecs2, _ = plan
    cands = []
    for vecs, shift in ((vecs1, tgt.s1), (vecs2, tgt.s2)):
        if len(vecs) < 2:
            continue
        coeffs = []
        for vec in vecs:
            acc = 0j
            for c in reversed(vec):
                acc = acc * t + c
            coeffs.append(acc)
        coeffs[0] -= shift
        scale = max(abs(cc) for cc in coeffs) or 1.0
        while len(coeffs) > 1 and abs(coeffs[-1]) <= 1e-12 * scale:
            coeffs.pop()
        deg = len(coeffs) - 1
        if deg == 1:
            cands.append(-coeffs[0] / coeffs[1])
        elif deg == 2:
            a, b, cc = coeffs[2], coeffs[1], coeffs[0]
            disc = (b * b - 4 * a * cc) ** 0.5
            q = -0.5 * (b + disc) if (b.conjugate() * disc).real >= 0 else -0.5 * (b - disc)
            if q != 0:
                cands.extend([q / a, cc / q])
            else:
                cands.append(0j)
        elif deg >= 3:
            cands.extend(np.roots(coeffs[::-1]).tolist())
    return cands


def _solve_once(m: PlaneMap, tgt: TargetPoint, seed):
    plan = _plan(m)
    elim, mats = plan[0], plan[1]
    elim_poly = _eliminant_for_target(m, plan, tgt)
    if elim_poly.is_zero:
        raise DegenerateSystem("eliminant vanished identically (shared component)")
    if elim_poly.degree < 1:
        return []

    c1 = mats[0].copy()
    c1[0, 0] -= tgt.s1
    c2 = mats[3].copy()
    c2[0, 0] -= tgt.s2
    stol = RESIDUAL_TOL * (1.0 + tgt.norm)

    points = []  # (x, y, residual, multiplicity)
    for root in uniroots(elim_poly, seed=seed).roots:
        t = root.value
        found = []
        for cand in _elim_candidates(plan, tgt, t):
            x0, y0 = (cand, t) if elim == "x" else (t, cand)
            x, y, res, _ = K.newton2(c1, mats[1], mats[2], c2, mats[4], mats[5], x0, y0, 1e-14, 60)
            if res > stol:
                continue
            # the polish must stay over this eliminant root; a jump to a
            # different survivor value means Newton wandered to another branch
            surv = y if elim == "x" else x
            if abs(surv - t) > 1e-6 * (1.0 + abs(t)):
                continue
            if any(
                abs(x - fx) <= _DEDUP_TOL * (1 + abs(x)) and abs(y - fy) <= _DEDUP_TOL * (1 + abs(y))
                for fx, fy, _ in found
            ):
                continue
            found.append((x, y, res))
        if not found:
            continue
        found.sort(key=lambda f: f[2])
        found = found[: root.multiplicity]
        mults = [1] * len(found)
        mults[-1] += root.multiplicity - len(found)
        points.extend((x, y, res, mu) for (x, y, res), mu in zip(found, mults))
    return points


def preimages(m: PlaneMap, s, seed=0, caustic_policy="raise", allow_complex=False) -> PreimageSet:
    """All complex solutions of f(x, y) = s with magnifications.

    Raises CausticTarget when any pre-image sits below the caustic
    tolerance (pass caustic_policy='flag' to get an uncertified set
    instead) and DegenerateSystem when the root count cannot be brought up
    to the weighted Bezout count.
    """
    tgt = TargetPoint.of(s)
    if not (math.isfinite(tgt.s1.real) and math.isfinite(tgt.s2.real)
            and math.isfinite(tgt.s1.imag) and math.isfinite(tgt.s2.imag)):
        raise ValueError("target must be finite")
    if not allow_complex and (tgt.s1.imag != 0 or tgt.s2.imag != 0):
        raise ValueError("complex targets require allow_complex=True")
    expected = weighted_bezout_count(m)

    points = []
    for attempt in range(3):
        points = _solve_once(m, tgt, seed + 17 * attempt)
        if sum(p[3] for p in points) == expected:
            break
    else:
        got = sum(p[3] for p in points)
        if got != expected:
            raise DegenerateSystem(
                f"found {got} pre-images (with multiplicity), expected {expected} "
                f"for {m.family.label} at ({tgt.s1:g}, {tgt.s2:g})"
            )

    tol = caustic_tolerance(m)
    pres = []
    for x, y, res, mu in points:
        j = jacobian_det(m, x, y)
        mag = 1.0 / j if j != 0 else complex("inf")
        real = max(abs(x.imag), abs(y.imag)) <= REAL_TOL * (1.0 + abs(x) + abs(y))
        pres.append(
            Preimage(x=x, y=y, magnification=mag, jac_det=j, residual=res, is_real=real, multiplicity=mu)
        )
    pres.sort(key=lambda p: (p.x.real, p.x.imag, p.y.real, p.y.imag))
    min_j = min((abs(p.jac_det) for p in pres), default=float("inf"))
    certified = min_j > tol
    if not certified and caustic_policy == "raise":
        raise CausticTarget(
            f"target ({tgt.s1:g}, {tgt.s2:g}) is near-caustic for {m.family.label}: "
            f"min |det Jac| = {min_j:.3e} <= {tol:.3e}",
            min_abs_jac=min_j,
        )
    return PreimageSet(
        preimages=tuple(pres),
        bezout_expected=expected,
        family=m.family,
        target=tgt,
        certified_noncaustic=certified,
    )


def total_signed_magnification(ps: PreimageSet, mode="all_complex"):
    """Sum of magnifications over the selected pre-images.

    'all_complex' sums every pre-image (this is minus the residue sum at
    infinity and vanishes for all catalog families); 'real_only' is the
    physically observable sum, equal to the full sum when every pre-image
    is real."""
    if mode not in ("real_only", "all_complex"):
        raise ValueError("mode must be 'real_only' or 'all_complex'")
    if not ps.certified_noncaustic:
        raise CausticTarget("magnification sum on an uncertified (near-caustic) pre-image set")
    sel = ps.preimages if mode == "all_complex" else ps.real_preimages
    return sum((p.magnification * p.multiplicity for p in sel), 0j)


def moment_sum(ps: PreimageSet, h: BiPoly):
    """Sum of h(x_i, y_i) * M_i over all complex pre-images; vanishes when
    the weighted degree of h is below d1 + d2 - a0 - a1."""
    if not ps.certified_noncaustic:
        raise CausticTarget("moment sum on an uncertified (near-caustic) pre-image set")
    return sum(
        (eval_bipoly(h, p.x, p.y) * p.magnification * p.multiplicity for p in ps.preimages), 0j
    )
