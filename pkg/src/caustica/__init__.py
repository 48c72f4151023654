"""caustica: A/D/E caustic-singularity map families, pre-image solving,
magnification relations, and their certification through weighted
projective compactification and the Global Residue Theorem."""

from ._kernels import BACKEND_NAME, available_backends
from .catalog import (
    FamilyId,
    ParamVector,
    PlaneMap,
    Weights,
    assigned_weights,
    build_family,
    elliptic_umbilic,
    expected_image_count,
    family_a,
    family_d,
    family_e6,
    family_e7,
    family_e8,
    generating_function,
    hyperbolic_umbilic,
    param_names,
    parse_family,
)
from .caustic import (
    CausticSample,
    RegionMap,
    caustic_metamorphosis_sweep,
    classify_regions,
    critical_curve,
)
from .poly import (
    BiPoly,
    Root,
    RootList,
    UniPoly,
    eval_bipoly,
    jacobian_det,
    jacobian_det_poly,
    partial,
    resultant_eliminate,
    uniroots,
)
from .residue import ResidueReport, degree_criterion, residue_at_root, verify_grt
from .solver import (
    Preimage,
    PreimageSet,
    TargetPoint,
    magnification,
    moment_sum,
    preimages,
    total_signed_magnification,
    weighted_bezout_count,
)
from .wproj import (
    InfinityPoint,
    SingularPoint,
    TriPoly,
    WeightedHomogPair,
    homogenize,
    roots_at_infinity,
    singular_points,
    weighted_bezout,
    weighted_degree,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "available_backends",
    "FamilyId",
    "ParamVector",
    "PlaneMap",
    "Weights",
    "assigned_weights",
    "build_family",
    "elliptic_umbilic",
    "expected_image_count",
    "family_a",
    "family_d",
    "family_e6",
    "family_e7",
    "family_e8",
    "generating_function",
    "hyperbolic_umbilic",
    "param_names",
    "parse_family",
    "CausticSample",
    "RegionMap",
    "caustic_metamorphosis_sweep",
    "classify_regions",
    "critical_curve",
    "BiPoly",
    "Root",
    "RootList",
    "UniPoly",
    "eval_bipoly",
    "jacobian_det",
    "jacobian_det_poly",
    "partial",
    "resultant_eliminate",
    "uniroots",
    "ResidueReport",
    "degree_criterion",
    "residue_at_root",
    "verify_grt",
    "Preimage",
    "PreimageSet",
    "TargetPoint",
    "magnification",
    "moment_sum",
    "preimages",
    "total_signed_magnification",
    "weighted_bezout_count",
    "InfinityPoint",
    "SingularPoint",
    "TriPoly",
    "WeightedHomogPair",
    "homogenize",
    "roots_at_infinity",
    "singular_points",
    "weighted_bezout",
    "weighted_degree",
]
