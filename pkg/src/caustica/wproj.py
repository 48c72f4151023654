"""Weighted homogenization and behavior at infinity.

A plane-map system (f1 - s1, f2 - s2) lifts to a pair of weighted-
homogeneous polynomials in [X : Y : U] with x = X / U^a0, y = Y / U^a1.
Setting U = 0 exposes the common roots at infinity; their absence is what
forces the affine residue sum (the total signed magnification) to vanish.
"""

import cmath
import math
from dataclasses import dataclass

from .catalog import PlaneMap, Weights, assigned_weights
from .errors import NonHomogeneousInput, NonIntegerCount, RootsAtInfinityPresent, ZeroPolynomial
from .poly import BiPoly, UniPoly, uniroots

_AXIS_X = "[1:0:0]"
_AXIS_Y = "[0:1:0]"


def weighted_degree(p: BiPoly, w: Weights) -> int:
    """max over terms of a0*i + a1*j (x carries weight a0, y weight a1)."""
    if p.is_zero:
        raise ZeroPolynomial("weighted degree of the zero polynomial")
    return p.weighted_degree(w.a0, w.a1)


@dataclass(frozen=True)
class TriPoly:
    """Weighted-homogeneous polynomial in (X, Y, U): terms (i, j, k, coeff)."""

    terms: tuple

    @staticmethod
    def from_dict(d):
        items = []
        for (i, j, k), c in d.items():
            c = complex(c)
            if c != 0:
                items.append((int(i), int(j), int(k), c))
        items.sort(key=lambda t: (t[0], t[1], t[2]))
        return TriPoly(tuple(items))

    def homogeneous_degree(self, w: Weights):
        """The common weighted degree of all terms, or None if mixed."""
        degs = {w.a0 * i + w.a1 * j + w.a2 * k for i, j, k, _ in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def dehomogenize(self) -> BiPoly:
        d = {}
        for i, j, _, c in self.terms:
            d[(i, j)] = d.get((i, j), 0j) + c
        return BiPoly.from_dict(d)

    def at_infinity_chart_y(self) -> UniPoly:
        """Restriction to U = 0, Y = 1, as a polynomial in X."""
        d = {}
        for i, j, k, c in self.terms:
            if k == 0:
                d[i] = d.get(i, 0j) + c
        if not d:
            return UniPoly(())
        n = max(d)
        return UniPoly.from_coeffs([d.get(i, 0j) for i in range(n + 1)])

    def coeff_at_axis(self, axis):
        """Value at [1:0:0] (axis='X') or [0:1:0] (axis='Y'): the pure-power
        coefficient with no U factor, if present."""
        for i, j, k, c in self.terms:
            if k == 0 and ((axis == "X" and j == 0) or (axis == "Y" and i == 0)):
                return c
        return 0j


@dataclass(frozen=True)
class WeightedHomogPair:
    q1: TriPoly
    q2: TriPoly
    weights: Weights
    d1: int
    d2: int


@dataclass(frozen=True)
class InfinityPoint:
    """A common root on the U = 0 line, normalized in a declared chart:
    Y = 1 when Y != 0, otherwise X = 1."""

    X: complex
    Y: complex
    chart: str

    @property
    def label(self):
        if self.chart == "X":
            return _AXIS_X
        if abs(self.X) == 0:
            return _AXIS_Y
        return f"[{self.X:.12g}:1:0]"


@dataclass(frozen=True)
class SingularPoint:
    location: str
    local_group_order: int


def _homogenize_component(f: BiPoly, s, d, w: Weights) -> TriPoly:
    terms = {}
    for i, j, c in f.terms:
        e = w.a0 * i + w.a1 * j
        key = (i, j, d - e)
        terms[key] = terms.get(key, 0j) + c
    sk = complex(s)
    if sk != 0:
        key = (0, 0, d)
        terms[key] = terms.get(key, 0j) - sk
    return TriPoly.from_dict(terms)


def homogenize(m: PlaneMap, s, w: Weights = None) -> WeightedHomogPair:
    """Lift the shifted system (f1 - s1, f2 - s2) into WP(a0, a1, 1).

    Each affine monomial x^i y^j of weighted degree e becomes
    X^i Y^j U^(d - e); the target shift -s_k becomes -s_k U^(d_k).
    Dehomogenizing at U = 1 recovers the affine system exactly.
    """
    if w is None:
        w = assigned_weights(m.family)
    s1, s2 = complex(s[0]), complex(s[1])
    d1 = weighted_degree(m.f1, w)
    d2 = weighted_degree(m.f2, w)
    return WeightedHomogPair(
        q1=_homogenize_component(m.f1, s1, d1, w),
        q2=_homogenize_component(m.f2, s2, d2, w),
        weights=w,
        d1=d1,
        d2=d2,
    )


def _canonical_mixed(xval, w: Weights):
    """Canonical orbit representative of [X:1:0]: among the a1 rescalings
    X -> zeta^a0 X (zeta^a1 = 1) pick the one with smallest principal
    argument."""
    cands = [xval * cmath.exp(2j * math.pi * w.a0 * k / w.a1) for k in range(w.a1)]
    return min(cands, key=lambda z: (round(cmath.phase(z), 10), z.real, z.imag))


def roots_at_infinity(hp: WeightedHomogPair):
    """All common roots of (q1, q2) on the line at infinity U = 0.

    Axis points are decided from the monomial support; mixed points (both
    coordinates nonzero) come from the common roots of the two chart
    restrictions q(X, 1, 0), de-duplicated under the weighted scaling."""
    w = hp.weights
    for q, d in ((hp.q1, hp.d1), (hp.q2, hp.d2)):
        hd = q.homogeneous_degree(w)
        if hd is None or hd != d:
            raise NonHomogeneousInput("input pair is not weighted-homogeneous of the stated degrees")

    out = []
    if hp.q1.coeff_at_axis("X") == 0 and hp.q2.coeff_at_axis("X") == 0:
        out.append(InfinityPoint(X=1.0 + 0j, Y=0j, chart="X"))
    if hp.q1.coeff_at_axis("Y") == 0 and hp.q2.coeff_at_axis("Y") == 0:
        out.append(InfinityPoint(X=0j, Y=1.0 + 0j, chart="Y"))

    g1 = hp.q1.at_infinity_chart_y()
    g2 = hp.q2.at_infinity_chart_y()
    if g1.is_zero and g2.is_zero:
        raise NonHomogeneousInput("both polynomials vanish identically at infinity")
    # order so g1 is the nonzero one with positive degree if possible
    if g1.is_zero or (g1.degree < 1 <= max(g2.degree, 0) and not g2.is_zero):
        g1, g2 = g2, g1
    mixed = []
    if g1.degree >= 1:
        scale2 = max((abs(c) for c in g2.coeffs), default=0.0)
        for root in uniroots(g1, seed=0).roots:
            r = root.value
            if abs(r) <= 1e-10:
                continue  # that's the Y-axis point, handled above
            if g2.is_zero:
                ok = True
            else:
                ok = abs(g2.eval(r)) <= 1e-8 * scale2 * (1.0 + abs(r)) ** max(g2.degree, 0)
            if ok:
                mixed.append(_canonical_mixed(r, w))
    uniq = []
    for z in mixed:
        if all(abs(z - u) > 1e-8 * (1 + abs(z)) for u in uniq):
            uniq.append(z)
    out.extend(InfinityPoint(X=z, Y=1.0 + 0j, chart="Y") for z in sorted(uniq, key=lambda z: (z.real, z.imag)))
    return out


def singular_points(w: Weights):
    """Orbifold singular points of WP(a0, a1, 1): the axis points at infinity
    whose weight exceeds 1, with local group order equal to that weight.
    The affine chart (weight-1 coordinate) is always regular."""
    out = []
    if w.a0 > 1:
        out.append(SingularPoint(location=_AXIS_X, local_group_order=w.a0))
    if w.a1 > 1:
        out.append(SingularPoint(location=_AXIS_Y, local_group_order=w.a1))
    return out


def weighted_bezout(hp: WeightedHomogPair) -> int:
    """d1*d2 / (a0*a1): the common-root count (with multiplicity) in the
    affine chart when no roots at infinity exist."""
    roots = roots_at_infinity(hp)
    if roots:
        raise RootsAtInfinityPresent(
            "weighted Bezout count requires no roots at infinity; found "
            + ", ".join(p.label for p in roots)
        )
    num = hp.d1 * hp.d2
    den = hp.weights.a0 * hp.weights.a1
    if num % den != 0:
        raise NonIntegerCount(f"{hp.d1}*{hp.d2}/({hp.weights.a0}*{hp.weights.a1}) is not an integer")
    return num // den
