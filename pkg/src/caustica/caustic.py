"""Critical curves, caustics, and image-count region maps.

The critical set det(Jac f) = 0 is extracted by marching squares over a
grid with every emitted vertex Newton-refined onto the zero set; caustics
are the images of those points under the map. Region maps classify a grid
of target cells by their number of real pre-images.
"""

from dataclasses import dataclass, replace

import numpy as np

from .catalog import FamilyId, ParamVector, PlaneMap, build_family, param_names
from .errors import DegenerateSystem, EmptyCriticalSet
from .poly import eval_bipoly, eval_bipoly_grid, jacobian_det_poly, partial
from .solver import preimages

CRITICAL_RESIDUAL_TOL = 1e-8   # |det Jac| bound for emitted critical points
NEAR_CAUSTIC_CELL_TOL = 1e-5   # min |det Jac| over pre-images below this flags a cell


@dataclass(frozen=True)
class CausticSample:
    """Critical-curve points (ordered along contour segments) and their
    caustic images for one parameter value."""

    family: FamilyId
    params: ParamVector
    c: float
    segments: tuple        # tuple of tuples of (x, y) on det Jac = 0
    image_segments: tuple  # matching tuples of (s1, s2) = f(x, y)

    @property
    def critical_points(self):
        return tuple(p for seg in self.segments for p in seg)

    @property
    def caustic_points(self):
        return tuple(p for seg in self.image_segments for p in seg)


@dataclass(frozen=True)
class RegionMap:
    family: FamilyId
    params: ParamVector
    bbox: tuple
    resolution: int
    counts: np.ndarray          # real pre-image count per cell; -1 where flagged
    real_mag_sums: np.ndarray   # sum of real magnifications per cell
    flagged: np.ndarray         # near-caustic / degenerate cells

    def cell_centers(self):
        xmin, xmax, ymin, ymax = self.bbox
        xs = xmin + (np.arange(self.resolution) + 0.5) * (xmax - xmin) / self.resolution
        ys = ymin + (np.arange(self.resolution) + 0.5) * (ymax - ymin) / self.resolution
        return xs, ys


_EDGES = {  # marching-squares case -> list of (edge_a, edge_b) crossings
    1: [(3, 2)], 2: [(2, 1)], 3: [(3, 1)], 4: [(0, 1)],
    6: [(0, 2)], 7: [(3, 0)], 8: [(0, 3)],
    9: [(0, 2)], 11: [(0, 1)], 12: [(1, 3)], 13: [(2, 1)], 14: [(3, 2)],
}
# edges: 0 = top (v00-v10), 1 = right (v10-v11), 2 = bottom (v01-v11), 3 = left (v00-v01)


def _edge_point(edge, ix, iy, xs, ys, vals):
    if edge == 0:
        a, b = vals[ix, iy], vals[ix + 1, iy]
        t = a / (a - b)
        return (xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[iy])
    if edge == 2:
        a, b = vals[ix, iy + 1], vals[ix + 1, iy + 1]
        t = a / (a - b)
        return (xs[ix] + t * (xs[ix + 1] - xs[ix]), ys[iy + 1])
    if edge == 3:
        a, b = vals[ix, iy], vals[ix, iy + 1]
        t = a / (a - b)
        return (xs[ix], ys[iy] + t * (ys[iy + 1] - ys[iy]))
    a, b = vals[ix + 1, iy], vals[ix + 1, iy + 1]
    t = a / (a - b)
    return (xs[ix + 1], ys[iy] + t * (ys[iy + 1] - ys[iy]))


def _marching_segments(xs, ys, vals):
    segs = []
    nx, ny = vals.shape
    for ix in range(nx - 1):
        for iy in range(ny - 1):
            v00 = vals[ix, iy] > 0
            v10 = vals[ix + 1, iy] > 0
            v11 = vals[ix + 1, iy + 1] > 0
            v01 = vals[ix, iy + 1] > 0
            case = v00 * 8 + v10 * 4 + v11 * 2 + v01 * 1
            if case in (0, 15):
                continue
            if case in (5, 10):
                center = 0.25 * (
                    vals[ix, iy] + vals[ix + 1, iy] + vals[ix, iy + 1] + vals[ix + 1, iy + 1]
                )
                if case == 5:
                    pairs = [(0, 1), (2, 3)] if center > 0 else [(0, 3), (2, 1)]
                else:
                    pairs = [(0, 3), (2, 1)] if center > 0 else [(0, 1), (2, 3)]
            else:
                pairs = _EDGES[case]
            for ea, eb in pairs:
                pa = _edge_point(ea, ix, iy, xs, ys, vals)
                pb = _edge_point(eb, ix, iy, xs, ys, vals)
                segs.append((pa, pb))
    return segs


def _chain_segments(segs, quant):
    """Join segments sharing endpoints into ordered polylines."""

    def key(p):
        return (round(p[0] / quant), round(p[1] / quant))

    adj = {}
    for idx, (a, b) in enumerate(segs):
        adj.setdefault(key(a), []).append((idx, 0))
        adj.setdefault(key(b), []).append((idx, 1))
    used = [False] * len(segs)
    chains = []

    def walk(idx, end):
        pts = []
        cur, cend = idx, end
        while True:
            used[cur] = True
            a, b = segs[cur]
            start, nxt = (a, b) if cend == 0 else (b, a)
            if not pts:
                pts.append(start)
            pts.append(nxt)
            cont = None
            for jdx, jend in adj.get(key(nxt), []):
                if not used[jdx]:
                    cont = (jdx, jend)
                    break
            if cont is None:
                return pts
            cur, cend = cont

    endpoint_degree = {k: len(v) for k, v in adj.items()}
    for idx, (a, b) in enumerate(segs):  # open chains first
        if used[idx]:
            continue
        if endpoint_degree[key(a)] == 1:
            chains.append(walk(idx, 0))
        elif endpoint_degree[key(b)] == 1:
            chains.append(walk(idx, 1))
    for idx in range(len(segs)):  # remaining closed loops
        if not used[idx]:
            chains.append(walk(idx, 0))
    return chains


def critical_curve(m: PlaneMap, bbox=(-4.0, 4.0, -4.0, 4.0), resolution=128) -> CausticSample:
    """Marching-squares extraction of det(Jac f) = 0 inside ``bbox``.

    Every vertex is refined onto the zero set by Newton steps along the
    gradient; points are ordered along contour segments. Raises
    EmptyCriticalSet when the determinant has no sign change in the box.
    """
    xmin, xmax, ymin, ymax = bbox
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("bbox must be non-degenerate")
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    jpoly = jacobian_det_poly(m)
    jx = partial(jpoly, "x")
    jy = partial(jpoly, "y")
    xs = np.linspace(xmin, xmax, resolution + 1)
    ys = np.linspace(ymin, ymax, resolution + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    vals = eval_bipoly_grid(jpoly, gx, gy).real
    segs = _marching_segments(xs, ys, vals)
    if not segs:
        raise EmptyCriticalSet(
            f"det Jac has no sign change for {m.family.label} in bbox {bbox}; enlarge the box"
        )
    quant = 1e-9 * max(xmax - xmin, ymax - ymin)
    chains = _chain_segments(segs, quant)

    crit_segments = []
    img_segments = []
    for chain in chains:
        pts = []
        imgs = []
        for (x, y) in chain:
            for _ in range(5):
                f = eval_bipoly(jpoly, x, y).real
                gxv = eval_bipoly(jx, x, y).real
                gyv = eval_bipoly(jy, x, y).real
                n2 = gxv * gxv + gyv * gyv
                if n2 == 0.0:
                    break
                x -= f * gxv / n2
                y -= f * gyv / n2
            if abs(eval_bipoly(jpoly, x, y).real) <= CRITICAL_RESIDUAL_TOL:
                pts.append((float(x), float(y)))
                imgs.append((eval_bipoly(m.f1, x, y).real, eval_bipoly(m.f2, x, y).real))
        if len(pts) >= 2:
            crit_segments.append(tuple(pts))
            img_segments.append(tuple(imgs))
    if not crit_segments:
        raise EmptyCriticalSet(f"no critical points survived refinement for {m.family.label}")

    cval = m.params.get("c").real if m.family.is_lensing else float("nan")
    return CausticSample(
        family=m.family,
        params=m.params,
        c=float(cval),
        segments=tuple(crit_segments),
        image_segments=tuple(img_segments),
    )


def classify_regions(m: PlaneMap, target_bbox=(-6.0, 6.0, -6.0, 6.0), resolution=128, seed=0) -> RegionMap:
    """Count real pre-images and their magnification sum on a grid of
    target cells; near-caustic cells are flagged instead of counted."""
    xmin, xmax, ymin, ymax = target_bbox
    if not (xmax > xmin and ymax > ymin):
        raise ValueError("target_bbox must be non-degenerate")
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    counts = np.full((resolution, resolution), -1, dtype=int)
    sums = np.full((resolution, resolution), np.nan)
    flagged = np.zeros((resolution, resolution), dtype=bool)
    dx = (xmax - xmin) / resolution
    dy = (ymax - ymin) / resolution
    for i in range(resolution):
        s1 = xmin + (i + 0.5) * dx
        for j in range(resolution):
            s2 = ymin + (j + 0.5) * dy
            try:
                ps = preimages(m, (s1, s2), seed=seed, caustic_policy="flag")
            except DegenerateSystem:
                flagged[i, j] = True
                continue
            if ps.min_abs_jac < NEAR_CAUSTIC_CELL_TOL:
                flagged[i, j] = True
                continue
            reals = ps.real_preimages
            counts[i, j] = sum(p.multiplicity for p in reals)
            sums[i, j] = sum(p.magnification.real * p.multiplicity for p in reals)
    return RegionMap(
        family=m.family,
        params=m.params,
        bbox=tuple(float(v) for v in target_bbox),
        resolution=resolution,
        counts=counts,
        real_mag_sums=sums,
        flagged=flagged,
    )


def caustic_metamorphosis_sweep(
    fid: FamilyId,
    c_range,
    steps,
    bbox=(-4.0, 4.0, -4.0, 4.0),
    resolution=128,
    param_name=None,
    base_params=None,
):
    """Critical curves and caustics along a one-parameter slice.

    For the lensing maps the swept parameter is c; for a catalog family a
    ``param_name`` must be given and the remaining parameters frozen via
    ``base_params``."""
    if param_name is None:
        if not fid.is_lensing:
            raise ValueError("param_name is required for non-lensing families")
        param_name = "c"
    if param_name not in param_names(fid):
        raise ValueError(f"{param_name!r} is not a parameter of {fid.label}")
    lo, hi = float(c_range[0]), float(c_range[1])
    if steps < 1:
        raise ValueError("steps must be >= 1")
    values = np.linspace(lo, hi, steps)
    base = dict(base_params or {})
    out = []
    for v in values:
        params = dict(base)
        params[param_name] = float(v)
        m = build_family(fid, params)
        sample = critical_curve(m, bbox=bbox, resolution=resolution)
        if not fid.is_lensing:
            sample = replace(sample, c=float(v))
        out.append(sample)
    return out
