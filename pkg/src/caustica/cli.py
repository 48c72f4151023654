"""Command-line interface.

Subcommands: families, solve, verify, infinity, caustic, sweep. JSON
artifacts carry schema_version 1 and serialize complex numbers as
{"re": ..., "im": ...}; caustic/sweep emit CSV rows step,x,y,s1,s2,det_jac.

Exit codes: 0 success (verify: vanishing certified and numerically
confirmed), 1 verification failure, 2 near-caustic target, 3 degenerate
system, 4 I/O error.
"""

import argparse
import csv
import io
import json
import os
import random
import sys

from . import _kernels
from .catalog import (
    FamilyId,
    assigned_weights,
    build_family,
    expected_image_count,
    param_names,
    parse_family,
    Weights,
)
from .caustic import caustic_metamorphosis_sweep, classify_regions, critical_curve
from .errors import CausticaError, CausticTarget, DegenerateSystem
from .poly import jacobian_det
from .residue import verify_grt
from .solver import preimages, total_signed_magnification
from .wproj import homogenize, roots_at_infinity, singular_points, weighted_bezout

SCHEMA_VERSION = 1


def _c(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _family_json(fid: FamilyId):
    return {"kind": fid.kind, "n": fid.n, "signs": list(fid.signs), "label": fid.label}


def _parse_kv(text):
    out = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        k, _, v = part.partition("=")
        out[k.strip()] = float(v)
    return out


def _parse_floats(text, n, what):
    vals = [float(v) for v in str(text).split(",")]
    if len(vals) != n:
        raise ValueError(f"{what} needs {n} comma-separated numbers")
    return vals


def _default_params(fid):
    return {name: 1.0 for name in param_names(fid)}


def _family_from_args(args):
    signs = None
    if getattr(args, "signs", None):
        signs = tuple(1 if s.strip() == "+" else -1 for s in args.signs.split(","))
    return parse_family(args.family, n=getattr(args, "n", None), signs=signs)


def _params_from_args(fid, args):
    given = _parse_kv(getattr(args, "params", None))
    if not given:
        return _default_params(fid)
    return given


def _seed_from_args(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("CAUSTICA_SEED")
    return int(env) if env else 0


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _sample_target(m, seed):
    rng = random.Random(seed)
    for _ in range(200):
        s = (rng.uniform(-5, 5), rng.uniform(-5, 5))
        try:
            preimages(m, s, seed=seed)
            return s
        except (CausticTarget, DegenerateSystem):
            continue
    raise CausticTarget("could not sample a non-caustic target in 200 tries")


def cmd_families(args):
    rows = []
    fams = []
    fams.extend(FamilyId("A", n=n, signs=(1, 1)) for n in range(2, 9))
    fams.extend(FamilyId("D", n=n, signs=(s,)) for s in (1, -1) for n in range(4, 9))
    fams.extend(FamilyId("E6", signs=(s,)) for s in (1, -1))
    fams.extend([FamilyId("E7"), FamilyId("E8"), FamilyId("EllipticUmbilic"), FamilyId("HyperbolicUmbilic")])
    for fid in fams:
        w = assigned_weights(fid)
        m = build_family(fid, _default_params(fid))
        rows.append(
            {
                "family": _family_json(fid),
                "params": list(param_names(fid)),
                "weights": list(w.as_tuple()),
                "degrees": [m.d1, m.d2],
                "bezout": expected_image_count(fid),
            }
        )
    if args.format == "json":
        _emit(json.dumps({"schema_version": SCHEMA_VERSION, "families": rows}, indent=2), args.out)
    else:
        lines = [f"{'family':<22}{'params':<28}{'weights':<12}{'degrees':<10}count"]
        for r in rows:
            lines.append(
                f"{r['family']['label']:<22}"
                f"{','.join(r['params']) or '-':<28}"
                f"{str(tuple(r['weights'])):<12}"
                f"{str(tuple(r['degrees'])):<10}"
                f"{r['bezout']}"
            )
        _emit("\n".join(lines), args.out)
    return 0


def cmd_solve(args):
    fid = _family_from_args(args)
    m = build_family(fid, _params_from_args(fid, args))
    seed = _seed_from_args(args)
    target = _parse_floats(args.target, 2, "--target")
    ps = preimages(m, target, seed=seed)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": _family_json(fid),
        "params": {k: v.real for k, v in m.params.as_dict().items()},
        "target": {"s1": ps.target.s1.real, "s2": ps.target.s2.real},
        "seed": seed,
        "backend": _kernels.BACKEND_NAME,
        "bezout_expected": ps.bezout_expected,
        "certified_noncaustic": ps.certified_noncaustic,
        "preimages": [
            {
                "x": _c(p.x),
                "y": _c(p.y),
                "magnification": _c(p.magnification),
                "jac_det": _c(p.jac_det),
                "residual": p.residual,
                "is_real": p.is_real,
                "multiplicity": p.multiplicity,
            }
            for p in ps.preimages
        ],
        "total_magnification": {
            "all_complex": _c(total_signed_magnification(ps, "all_complex")),
            "real_only": _c(total_signed_magnification(ps, "real_only")),
        },
    }
    if args.format == "human":
        lines = [f"{fid.label}: {len(ps.preimages)} pre-images of ({target[0]:g}, {target[1]:g})"]
        for p in ps.preimages:
            mag = f"{p.magnification.real:.12g}" if p.is_real else f"{p.magnification:.12g}"
            lines.append(
                f"  x={p.x:.12g}  y={p.y:.12g}  M={mag}  "
                f"{'real' if p.is_real else 'complex'}"
            )
        tot = doc["total_magnification"]
        lines.append(f"  sum(all complex) = {tot['all_complex']['re']:.3e}")
        _emit("\n".join(lines), args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    return 0


def cmd_verify(args):
    fid = _family_from_args(args)
    m = build_family(fid, _params_from_args(fid, args))
    seed = _seed_from_args(args)
    if args.target:
        target = _parse_floats(args.target, 2, "--target")
    else:
        target = _sample_target(m, seed)
    hpoly = None
    if getattr(args, "moment", None):
        from .poly import BiPoly

        i, j = (int(v) for v in args.moment.split(","))
        hpoly = BiPoly.from_dict({(i, j): 1.0})
    tol_factor = args.tol if args.tol else 1e-9
    rep = verify_grt(m, target, h=hpoly, seed=seed, tol_factor=tol_factor)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": _family_json(fid),
        "params": {k: v.real for k, v in m.params.as_dict().items()},
        "target": {"s1": rep.target.s1.real, "s2": rep.target.s2.real},
        "weights": list(rep.weights.as_tuple()),
        "degrees": list(rep.degrees),
        "verdict": rep.grt_verdict,
        "affine_residue_sum": _c(rep.affine_residue_sum),
        "residue_scale": rep.residue_scale,
        "tolerance": rep.tolerance,
        "within_tolerance": rep.within_tolerance,
        "numerator_weighted_degree": rep.numerator_weighted_degree,
        "infinity_roots": [p.label for p in rep.infinity_roots],
    }
    if args.format == "human":
        ok = rep.vanishing_guaranteed and rep.within_tolerance
        _emit(
            f"{fid.label} at ({rep.target.s1.real:g}, {rep.target.s2.real:g}): {rep.grt_verdict}; "
            f"|sum| = {abs(rep.affine_residue_sum):.3e} (tol {rep.tolerance:.3e}) -> "
            f"{'OK' if ok else 'FAIL'}",
            args.out,
        )
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    return 0 if (rep.vanishing_guaranteed and rep.within_tolerance) else 1


def cmd_infinity(args):
    fid = _family_from_args(args)
    m = build_family(fid, _params_from_args(fid, args))
    if args.weights:
        a0, a1, a2 = (int(v) for v in args.weights.split(","))
        w = Weights(a0, a1, a2)
    else:
        w = assigned_weights(fid)
    target = _parse_floats(args.target, 2, "--target") if args.target else (1.0, 1.0)
    hp = homogenize(m, target, w)
    roots = roots_at_infinity(hp)
    bez = None
    if not roots:
        bez = weighted_bezout(hp)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": _family_json(fid),
        "weights": list(w.as_tuple()),
        "degrees": [hp.d1, hp.d2],
        "infinity_roots": [
            {"label": p.label, "X": _c(p.X), "Y": _c(p.Y), "chart": p.chart} for p in roots
        ],
        "singular_points": [
            {"location": sp.location, "local_group_order": sp.local_group_order}
            for sp in singular_points(w)
        ],
        "weighted_bezout": bez,
    }
    if args.format == "human":
        lines = [f"{fid.label} in WP{w.as_tuple()}: degrees ({hp.d1}, {hp.d2})"]
        lines.append(
            "roots at infinity: " + (", ".join(p.label for p in roots) if roots else "none")
        )
        lines.append(
            "singular points: "
            + (
                ", ".join(f"{sp.location} (Z/{sp.local_group_order}Z)" for sp in singular_points(w))
                or "none"
            )
        )
        if bez is not None:
            lines.append(f"weighted Bezout count: {bez}")
        _emit("\n".join(lines), args.out)
    else:
        _emit(json.dumps(doc, indent=2), args.out)
    return 0


def _samples_csv(samples):
    buf = io.StringIO()
    wr = csv.writer(buf)
    wr.writerow(["step", "x", "y", "s1", "s2", "det_jac"])
    for step, sample in enumerate(samples):
        m = build_family(sample.family, sample.params.as_dict())
        for seg, iseg in zip(sample.segments, sample.image_segments):
            for (x, y), (s1v, s2v) in zip(seg, iseg):
                wr.writerow([step, repr(x), repr(y), repr(s1v), repr(s2v), repr(jacobian_det(m, x, y).real)])
    return buf.getvalue()


def cmd_caustic(args):
    fid = _family_from_args(args)
    m = build_family(fid, _params_from_args(fid, args))
    bbox = tuple(_parse_floats(args.bbox, 4, "--bbox")) if args.bbox else (-4.0, 4.0, -4.0, 4.0)
    res = args.res or 128
    if args.regions:
        tbox = tuple(_parse_floats(args.bbox, 4, "--bbox")) if args.bbox else (-6.0, 6.0, -6.0, 6.0)
        rm = classify_regions(m, target_bbox=tbox, resolution=res, seed=_seed_from_args(args))
        doc = {
            "schema_version": SCHEMA_VERSION,
            "family": _family_json(fid),
            "params": {k: v.real for k, v in m.params.as_dict().items()},
            "bbox": list(rm.bbox),
            "resolution": rm.resolution,
            "counts": rm.counts.tolist(),
            "real_mag_sums": [[None if not (v == v) else v for v in row] for row in rm.real_mag_sums.tolist()],
            "flagged": rm.flagged.tolist(),
        }
        _emit(json.dumps(doc), args.out)
        return 0
    sample = critical_curve(m, bbox=bbox, resolution=res)
    _emit(_samples_csv([sample]), args.out)
    return 0


def cmd_sweep(args):
    fid = _family_from_args(args)
    lo, hi = _parse_floats(args.c_range, 2, "--c-range")
    bbox = tuple(_parse_floats(args.bbox, 4, "--bbox")) if args.bbox else (-4.0, 4.0, -4.0, 4.0)
    base = _parse_kv(args.params) or None
    samples = caustic_metamorphosis_sweep(
        fid,
        (lo, hi),
        args.steps or 10,
        bbox=bbox,
        resolution=args.res or 128,
        param_name=args.param,
        base_params=base,
    )
    _emit(_samples_csv(samples), args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="caustica",
        description="A/D/E caustic-singularity maps: pre-images, magnification relations, "
        "and their certification via weighted projective residues.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, target=False):
        p.add_argument("--family", required=True, help="family code, e.g. A2, D5+, E7, hyperbolic")
        p.add_argument("--n", type=int, help="index n for A/D families")
        p.add_argument("--signs", help="comma-separated signs, e.g. +,-")
        p.add_argument("--params", help="parameter assignments k=v,... (default: all 1)")
        p.add_argument("--seed", type=int, help="RNG seed (env CAUSTICA_SEED as fallback)")
        p.add_argument("--tol", type=float, help="verification tolerance factor")
        p.add_argument("--format", choices=["json", "csv", "human"], default="json")
        p.add_argument("--out", help="output path (default stdout)")
        if target:
            p.add_argument("--target", help="target point a,b")

    p = sub.add_parser("families", help="list catalog families, weights, degrees, counts")
    p.add_argument("--format", choices=["json", "human"], default="human")
    p.add_argument("--out")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("solve", help="all pre-images of a target with magnifications")
    common(p, target=True)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("verify", help="verify the vanishing magnification relation")
    common(p, target=True)
    p.add_argument("--moment", help="numerator monomial i,j for moment verification")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("infinity", help="roots at infinity and orbifold singular points")
    common(p, target=True)
    p.add_argument("--weights", help="override weights a0,a1,1")
    p.set_defaults(func=cmd_infinity)
    p = sub.add_parser("caustic", help="critical curve and caustic samples (CSV), or region map")
    common(p)
    p.add_argument("--bbox", help="xmin,xmax,ymin,ymax")
    p.add_argument("--res", type=int, help="grid resolution (default 128)")
    p.add_argument("--regions", action="store_true", help="emit a real-image-count region map (JSON)")
    p.set_defaults(func=cmd_caustic)
    p = sub.add_parser("sweep", help="caustic metamorphosis sweep over a parameter range")
    common(p)
    p.add_argument("--bbox", help="xmin,xmax,ymin,ymax")
    p.add_argument("--res", type=int)
    p.add_argument("--c-range", dest="c_range", required=True, help="lo,hi")
    p.add_argument("--steps", type=int)
    p.add_argument("--param", help="swept parameter name (default c for lensing)")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CausticTarget as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegenerateSystem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4
    except CausticaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
