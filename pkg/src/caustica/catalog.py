"""Catalog of the A/D/E caustic-singularity families and the two umbilic
lensing maps.

Each family is a scalar generating function F(x, y) whose in-plane gradient,
set to zero and solved for the target coordinates (s1, s2), induces a
polynomial plane map f = (f1, f2). Pre-images of a target s are the points
with f(x, y) = s, and the signed magnification at a pre-image is
1 / det(Jac f). Every family also carries an assigned weighted projective
space WP(a0, a1, 1) in which its homogenization has no common roots at
infinity.

Sign bookkeeping for the A family follows the gradient derivation: the
second map component is -2y for either choice of the y^2 sign, and the
generating function carries the target cross terms s2*x^2 - s1*x + (sign of
y^2)*s2*y. This is the unique convention under which grad F = 0 and
f(x, y) = s agree exactly for all sign choices.
"""

import math
from dataclasses import dataclass

from .errors import ExtraParam, MissingParam, UnknownFamily
from .poly import BiPoly

KIND_A = "A"
KIND_D = "D"
KIND_E6 = "E6"
KIND_E7 = "E7"
KIND_E8 = "E8"
KIND_ELLIPTIC = "EllipticUmbilic"
KIND_HYPERBOLIC = "HyperbolicUmbilic"

_KINDS = (KIND_A, KIND_D, KIND_E6, KIND_E7, KIND_E8, KIND_ELLIPTIC, KIND_HYPERBOLIC)
_NSIGNS = {KIND_A: 2, KIND_D: 1, KIND_E6: 1, KIND_E7: 0, KIND_E8: 0, KIND_ELLIPTIC: 0, KIND_HYPERBOLIC: 0}


@dataclass(frozen=True)
class FamilyId:
    """One singularity family: kind, index n (A and D only), sign choices."""

    kind: str
    n: int = None
    signs: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UnknownFamily(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        if len(self.signs) != _NSIGNS[self.kind]:
            raise ValueError(
                f"{self.kind} takes {_NSIGNS[self.kind]} sign(s), got {len(self.signs)}"
            )
        if self.kind == KIND_A:
            if self.n is None or self.n < 2:
                raise ValueError("A requires n >= 2")
        elif self.kind == KIND_D:
            if self.n is None or self.n < 4:
                raise ValueError("D requires n >= 4")
        elif self.n is not None:
            raise ValueError(f"{self.kind} does not take an index n")

    @property
    def is_lensing(self):
        return self.kind in (KIND_ELLIPTIC, KIND_HYPERBOLIC)

    @property
    def label(self):
        sgn = "".join("+" if s > 0 else "-" for s in self.signs)
        if self.kind == KIND_A:
            return f"A{self.n}({sgn[0]},{sgn[1]})"
        if self.kind == KIND_D:
            return f"D{self.n}({sgn})"
        if self.kind == KIND_E6:
            return f"E6({sgn})"
        if self.kind == KIND_ELLIPTIC:
            return "elliptic-umbilic"
        if self.kind == KIND_HYPERBOLIC:
            return "hyperbolic-umbilic"
        return self.kind


def family_a(n, sx=1, sy=1):
    return FamilyId(KIND_A, n=n, signs=(sx, sy))


def family_d(n, s=1):
    return FamilyId(KIND_D, n=n, signs=(s,))


def family_e6(s=1):
    return FamilyId(KIND_E6, signs=(s,))


def family_e7():
    return FamilyId(KIND_E7)


def family_e8():
    return FamilyId(KIND_E8)


def elliptic_umbilic():
    return FamilyId(KIND_ELLIPTIC)


def hyperbolic_umbilic():
    return FamilyId(KIND_HYPERBOLIC)


def param_names(fid: FamilyId):
    """Parameter names the family's normal form requires, in order."""
    if fid.kind == KIND_A:
        return tuple(f"c{k}" for k in range(3, fid.n))
    if fid.kind == KIND_D:
        return tuple(f"c{k}" for k in range(2, fid.n - 1))
    if fid.kind == KIND_E6:
        return ("c1", "c2", "c3")
    if fid.kind == KIND_E7:
        return ("c1", "c2", "c3", "c4")
    if fid.kind == KIND_E8:
        return ("c1", "c2", "c3", "c4", "c5")
    return ("c",)


@dataclass(frozen=True)
class ParamVector:
    """Bound parameter values, keyed by the normal form's parameter names."""

    entries: tuple

    @staticmethod
    def from_mapping(d):
        return ParamVector(tuple(sorted((str(k), complex(v)) for k, v in dict(d).items())))

    def as_dict(self):
        return dict(self.entries)

    def get(self, name):
        return dict(self.entries).get(name, 0j)

    def __len__(self):
        return len(self.entries)


def _validate_params(fid, params, allow_complex):
    if not isinstance(params, ParamVector):
        params = ParamVector.from_mapping(params or {})
    required = param_names(fid)
    given = params.as_dict()
    for name in required:
        if name not in given:
            raise MissingParam(name)
    for name in given:
        if name not in required:
            raise ExtraParam(name)
    if not allow_complex and any(v.imag != 0 for v in given.values()):
        raise ValueError("complex parameter values require allow_complex=True")
    return params


@dataclass(frozen=True)
class Weights:
    """Weights (a0, a1, a2) of a weighted projective plane; a2 is 1 here so
    the affine chart carries no orbifold singularities."""

    a0: int
    a1: int
    a2: int = 1

    def __post_init__(self):
        if min(self.a0, self.a1, self.a2) < 1:
            raise ValueError("weights must be positive")
        if self.a2 != 1:
            raise ValueError("a2 = 1 is required (affine chart must be regular)")
        if math.gcd(math.gcd(self.a0, self.a1), self.a2) != 1:
            raise ValueError("weights must be coprime as a triple")

    def as_tuple(self):
        return (self.a0, self.a1, self.a2)


@dataclass(frozen=True)
class PlaneMap:
    """A family member with parameters bound: the polynomial pair (f1, f2)
    and its weighted degrees (d1, d2) under the family's assigned weights."""

    family: FamilyId
    params: ParamVector
    f1: BiPoly
    f2: BiPoly
    d1: int
    d2: int


def assigned_weights(fid: FamilyId) -> Weights:
    """The weighted projective space assigned to each family.

    A and E6 extend to WP(1,1,1) (= CP^2), D_n to WP(n-2, 2, 1), E7 and E8
    to WP(3,2,1); both lensing maps extend to WP(1,1,1).
    """
    if fid.kind == KIND_A or fid.kind == KIND_E6 or fid.is_lensing:
        return Weights(1, 1, 1)
    if fid.kind == KIND_D:
        return Weights(fid.n - 2, 2, 1)
    if fid.kind in (KIND_E7, KIND_E8):
        return Weights(3, 2, 1)
    raise UnknownFamily(fid.kind)


def _a_polys(n, sx, sy, c, legacy_fold):
    f1 = {(n, 0): sx * (n + 1)}
    if not legacy_fold:
        f1[(1, 1)] = -4.0
    for k in range(3, n):
        f1[(k - 1, 0)] = k * c[f"c{k}"]
    f2 = {(0, 1): -2.0}
    return BiPoly.from_dict(f1), BiPoly.from_dict(f2)


def _d_polys(n, s, c):
    f1 = {(1, 1): 2.0}
    f2 = {(2, 0): 1.0, (0, n - 2): s * (n - 1)}
    for k in range(2, n - 1):
        f2[(0, k - 1)] = f2.get((0, k - 1), 0j) + k * c[f"c{k}"]
    return BiPoly.from_dict(f1), BiPoly.from_dict(f2)


def _e6_polys(s, c):
    f1 = {(2, 0): 3.0, (0, 2): c["c3"], (0, 1): c["c1"]}
    f2 = {(0, 3): s * 4.0, (1, 1): 2 * c["c3"], (0, 1): 2 * c["c2"], (1, 0): c["c1"]}
    return BiPoly.from_dict(f1), BiPoly.from_dict(f2)


def _e7_polys(c):
    f1 = {(2, 0): 3.0, (0, 3): 1.0, (0, 1): c["c1"]}
    f2 = {(1, 2): 3.0, (0, 3): 4 * c["c4"], (0, 2): 3 * c["c3"], (0, 1): 2 * c["c2"], (1, 0): c["c1"]}
    return BiPoly.from_dict(f1), BiPoly.from_dict(f2)


def _e8_polys(c):
    f1 = {(2, 0): 3.0, (0, 3): c["c5"], (0, 2): c["c4"], (0, 1): c["c1"]}
    f2 = {
        (0, 4): 5.0,
        (1, 2): 3 * c["c5"],
        (1, 1): 2 * c["c4"],
        (0, 2): 3 * c["c3"],
        (0, 1): 2 * c["c2"],
        (1, 0): c["c1"],
    }
    return BiPoly.from_dict(f1), BiPoly.from_dict(f2)


def _lensing_polys(kind, c):
    cv = c["c"]
    if kind == KIND_ELLIPTIC:
        f1 = {(2, 0): 1.0, (0, 2): -1.0}
        f2 = {(1, 1): -2.0, (0, 1): 4 * cv}
    else:
        f1 = {(2, 0): 1.0, (0, 1): 2 * cv}
        f2 = {(0, 2): 1.0, (1, 0): 2 * cv}
    return BiPoly.from_dict(f1), BiPoly.from_dict(f2)


def build_family(fid: FamilyId, params=None, legacy_fold=False, allow_complex=False) -> PlaneMap:
    """Construct the plane map (f1, f2) of a family with parameters bound.

    ``legacy_fold=True`` selects the reduced A2 fold variant without the
    -4xy cross term (valid only for A with n=2).
    """
    params = _validate_params(fid, params, allow_complex)
    c = params.as_dict()
    if legacy_fold and not (fid.kind == KIND_A and fid.n == 2):
        raise ValueError("legacy_fold applies only to A with n = 2")
    if fid.kind == KIND_A:
        f1, f2 = _a_polys(fid.n, fid.signs[0], fid.signs[1], c, legacy_fold)
    elif fid.kind == KIND_D:
        f1, f2 = _d_polys(fid.n, fid.signs[0], c)
    elif fid.kind == KIND_E6:
        f1, f2 = _e6_polys(fid.signs[0], c)
    elif fid.kind == KIND_E7:
        f1, f2 = _e7_polys(c)
    elif fid.kind == KIND_E8:
        f1, f2 = _e8_polys(c)
    else:
        f1, f2 = _lensing_polys(fid.kind, c)
    w = assigned_weights(fid)
    return PlaneMap(
        family=fid,
        params=params,
        f1=f1,
        f2=f2,
        d1=f1.weighted_degree(w.a0, w.a1),
        d2=f2.weighted_degree(w.a0, w.a1),
    )


def generating_function(fid: FamilyId, params, target, allow_complex=False) -> BiPoly:
    """The generating function F (time delay T for the lensing maps) with
    the target point bound.

    Its in-plane gradient vanishes exactly at the pre-images of the target
    under ``build_family``'s map.
    """
    params = _validate_params(fid, params, allow_complex)
    c = params.as_dict()
    s1, s2 = complex(target[0]), complex(target[1])
    if not allow_complex and (s1.imag != 0 or s2.imag != 0):
        raise ValueError("complex targets require allow_complex=True")
    if fid.kind == KIND_A:
        sx, sy = fid.signs
        n = fid.n
        d = {(n + 1, 0): sx, (0, 2): sy, (2, 0): s2, (1, 0): -s1, (0, 1): sy * s2}
        for k in range(3, n):
            d[(k, 0)] = d.get((k, 0), 0j) + c[f"c{k}"]
        return BiPoly.from_dict(d)
    if fid.kind == KIND_D:
        s = fid.signs[0]
        n = fid.n
        d = {(2, 1): 1.0, (0, n - 1): s, (0, 1): -s2, (1, 0): -s1}
        for k in range(2, n - 1):
            d[(0, k)] = d.get((0, k), 0j) + c[f"c{k}"]
        return BiPoly.from_dict(d)
    if fid.kind == KIND_E6:
        s = fid.signs[0]
        d = {
            (3, 0): 1.0,
            (0, 4): s,
            (1, 2): c["c3"],
            (0, 2): c["c2"],
            (1, 1): c["c1"],
            (0, 1): -s2,
            (1, 0): -s1,
        }
        return BiPoly.from_dict(d)
    if fid.kind == KIND_E7:
        d = {
            (3, 0): 1.0,
            (1, 3): 1.0,
            (0, 4): c["c4"],
            (0, 3): c["c3"],
            (0, 2): c["c2"],
            (1, 1): c["c1"],
            (0, 1): -s2,
            (1, 0): -s1,
        }
        return BiPoly.from_dict(d)
    if fid.kind == KIND_E8:
        d = {
            (3, 0): 1.0,
            (0, 5): 1.0,
            (1, 3): c["c5"],
            (1, 2): c["c4"],
            (0, 3): c["c3"],
            (0, 2): c["c2"],
            (1, 1): c["c1"],
            (0, 1): -s2,
            (1, 0): -s1,
        }
        return BiPoly.from_dict(d)
    cv = c["c"]
    kinetic = 0.5 * (s1 * s1 + s2 * s2)
    if fid.kind == KIND_ELLIPTIC:
        d = {
            (0, 0): kinetic,
            (1, 0): -s1,
            (0, 1): -s2,
            (3, 0): 1.0 / 3.0,
            (1, 2): -1.0,
            (0, 2): 2 * cv,
        }
        return BiPoly.from_dict(d)
    if fid.kind == KIND_HYPERBOLIC:
        d = {
            (0, 0): kinetic,
            (1, 0): -s1,
            (0, 1): -s2,
            (3, 0): 1.0 / 3.0,
            (0, 3): 1.0 / 3.0,
            (1, 1): 2 * cv,
        }
        return BiPoly.from_dict(d)
    raise UnknownFamily(fid.kind)


def elimination_variable(fid: FamilyId) -> str:
    """Which variable the pre-image solver eliminates first.

    The A family's second component is linear in y alone, so y is
    eliminated there; every other family has a component of degree <= 2 in
    x and eliminates x.
    """
    return "y" if fid.kind == KIND_A else "x"


def expected_image_count(fid: FamilyId) -> int:
    """Maximal pre-image count: n for A_n and D_n, 6/7/8 for E6/E7/E8,
    4 for both lensing maps (equals the weighted Bezout count)."""
    if fid.kind in (KIND_A, KIND_D):
        return fid.n
    if fid.kind == KIND_E6:
        return 6
    if fid.kind == KIND_E7:
        return 7
    if fid.kind == KIND_E8:
        return 8
    return 4


_SIGN_CHARS = {"+": 1, "-": -1}


def parse_family(text, n=None, signs=None) -> FamilyId:
    """Parse a family code string such as 'A2++', 'D5+', 'E6-', 'E7',
    'elliptic', 'hyp'. Explicit ``n``/``signs`` arguments override the
    compact suffixes."""
    t = str(text).strip()
    low = t.lower()
    if low in ("elliptic", "ell", "elliptic-umbilic", "ellipticumbilic"):
        return elliptic_umbilic()
    if low in ("hyperbolic", "hyp", "hyperbolic-umbilic", "hyperbolicumbilic"):
        return hyperbolic_umbilic()
    head = t[:1].upper()
    rest = t[1:]
    if head == "E":
        kind = {"6": KIND_E6, "7": KIND_E7, "8": KIND_E8}.get(rest[:1])
        if kind is None:
            raise UnknownFamily(f"cannot parse family {text!r}")
        suffix = rest[1:]
    elif head in ("A", "D"):
        kind = head
        digits = ""
        for ch in rest:
            if ch.isdigit():
                digits += ch
            else:
                break
        suffix = rest[len(digits):]
        if digits:
            if n is not None and n != int(digits):
                raise ValueError(f"conflicting n: {text!r} vs n={n}")
            n = int(digits)
    else:
        raise UnknownFamily(f"cannot parse family {text!r}")
    if suffix:
        if signs is not None:
            raise ValueError(f"conflicting signs: {text!r} vs signs={signs}")
        try:
            signs = tuple(_SIGN_CHARS[ch] for ch in suffix)
        except KeyError:
            raise UnknownFamily(f"cannot parse family {text!r}") from None
    nsigns = _NSIGNS[kind]
    if signs is None:
        signs = (1,) * nsigns
    signs = tuple(int(s) for s in signs)
    if kind in (KIND_A, KIND_D):
        return FamilyId(kind, n=n, signs=signs)
    if n is not None:
        raise ValueError(f"{kind} does not take an index n")
    return FamilyId(kind, signs=signs)
