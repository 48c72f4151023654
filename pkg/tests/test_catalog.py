import math
import random

import pytest

from caustica import (
    FamilyId,
    ParamVector,
    assigned_weights,
    build_family,
    elliptic_umbilic,
    eval_bipoly,
    family_a,
    family_d,
    family_e6,
    family_e7,
    family_e8,
    generating_function,
    hyperbolic_umbilic,
    jacobian_det,
    param_names,
    parse_family,
    preimages,
)
from caustica.errors import CausticTarget, DegenerateSystem, ExtraParam, MissingParam, UnknownFamily
from caustica.poly import partial
from oracles import hessian_det_at, random_params


# Hand-coded expansions, written independently term by term from the normal
# forms at small n. These are the oracle for build_family's coefficients.
def handcoded_maps():
    cases = []
    # A2 (+,+): f = (3x^2 - 4xy, -2y)
    cases.append((family_a(2), {}, {(2, 0): 3, (1, 1): -4}, {(0, 1): -2}))
    # A2 (-,+): f = (-3x^2 - 4xy, -2y)
    cases.append((family_a(2, sx=-1), {}, {(2, 0): -3, (1, 1): -4}, {(0, 1): -2}))
    # A4 (+,+), c3: f1 = 5x^4 + 3 c3 x^2 - 4xy
    cases.append(
        (family_a(4), {"c3": 0.7}, {(4, 0): 5, (2, 0): 3 * 0.7, (1, 1): -4}, {(0, 1): -2})
    )
    # D4 (+), c2: (2xy, x^2 + 3y^2 + 2 c2 y)
    cases.append(
        (family_d(4), {"c2": -1.3}, {(1, 1): 2}, {(2, 0): 1, (0, 2): 3, (0, 1): 2 * -1.3})
    )
    # D5 (-), c2, c3: (2xy, x^2 - 4y^3 + 3 c3 y^2 + 2 c2 y)
    cases.append(
        (
            family_d(5, -1),
            {"c2": 0.5, "c3": 2.0},
            {(1, 1): 2},
            {(2, 0): 1, (0, 3): -4, (0, 2): 6.0, (0, 1): 1.0},
        )
    )
    # E6 (+): (3x^2 + c3 y^2 + c1 y, 4y^3 + 2 c3 xy + 2 c2 y + c1 x)
    cases.append(
        (
            family_e6(),
            {"c1": 0.2, "c2": -0.4, "c3": 1.5},
            {(2, 0): 3, (0, 2): 1.5, (0, 1): 0.2},
            {(0, 3): 4, (1, 1): 3.0, (0, 1): -0.8, (1, 0): 0.2},
        )
    )
    # E7: (3x^2 + y^3 + c1 y, 3xy^2 + 4 c4 y^3 + 3 c3 y^2 + 2 c2 y + c1 x)
    cases.append(
        (
            family_e7(),
            {"c1": 1.0, "c2": 2.0, "c3": 3.0, "c4": 4.0},
            {(2, 0): 3, (0, 3): 1, (0, 1): 1.0},
            {(1, 2): 3, (0, 3): 16.0, (0, 2): 9.0, (0, 1): 4.0, (1, 0): 1.0},
        )
    )
    # E8: (3x^2 + c5 y^3 + c4 y^2 + c1 y, 5y^4 + 3c5 xy^2 + 2c4 xy + 3c3 y^2 + 2c2 y + c1 x)
    cases.append(
        (
            family_e8(),
            {"c1": 1.0, "c2": -1.0, "c3": 0.5, "c4": 2.0, "c5": -0.5},
            {(2, 0): 3, (0, 3): -0.5, (0, 2): 2.0, (0, 1): 1.0},
            {(0, 4): 5, (1, 2): -1.5, (1, 1): 4.0, (0, 2): 1.5, (0, 1): -2.0, (1, 0): 1.0},
        )
    )
    # elliptic umbilic: (x^2 - y^2, -2xy + 4cy)
    cases.append(
        (elliptic_umbilic(), {"c": 0.75}, {(2, 0): 1, (0, 2): -1}, {(1, 1): -2, (0, 1): 3.0})
    )
    # hyperbolic umbilic c=1: (x^2 + 2y, y^2 + 2x)
    cases.append(
        (hyperbolic_umbilic(), {"c": 1.0}, {(2, 0): 1, (0, 1): 2}, {(0, 2): 1, (1, 0): 2})
    )
    return cases


class TestBuildFamily:
    @pytest.mark.parametrize("fid,params,f1d,f2d", handcoded_maps())
    def test_handcoded_coefficients(self, fid, params, f1d, f2d):
        m = build_family(fid, params)
        got1 = m.f1.as_dict()
        got2 = m.f2.as_dict()
        assert got1.keys() == f1d.keys()
        assert got2.keys() == f2d.keys()
        for k, v in f1d.items():
            assert got1[k] == pytest.approx(complex(v), abs=1e-15)
        for k, v in f2d.items():
            assert got2[k] == pytest.approx(complex(v), abs=1e-15)

    def test_d5_worked_example(self):
        m = build_family(family_d(5), {"c2": 1.0, "c3": 1.0})
        assert m.f1.as_dict() == {(1, 1): 2 + 0j}
        assert m.f2.as_dict() == {(2, 0): 1 + 0j, (0, 3): 4 + 0j, (0, 2): 3 + 0j, (0, 1): 2 + 0j}

    def test_a_family_second_component(self):
        # the gradient derivation fixes f2 = -2y for either y^2 sign
        for sy in (1, -1):
            for n in (2, 5):
                m = build_family(family_a(n, 1, sy), {k: 0.3 for k in param_names(family_a(n))})
                assert m.f2.as_dict() == {(0, 1): -2 + 0j}

    def test_d_family_first_component(self):
        for n in range(4, 9):
            m = build_family(family_d(n), {k: 0.7 for k in param_names(family_d(n))})
            assert m.f1.as_dict() == {(1, 1): 2 + 0j}

    def test_weighted_degrees(self):
        assert (build_family(family_a(6), {"c3": 1, "c4": 1, "c5": 1}).d1,
                build_family(family_a(6), {"c3": 1, "c4": 1, "c5": 1}).d2) == (6, 1)
        for n in range(4, 9):
            m = build_family(family_d(n), {k: 1.0 for k in param_names(family_d(n))})
            assert (m.d1, m.d2) == (n, 2 * n - 4)
        assert (build_family(family_e6(), {"c1": 1, "c2": 1, "c3": 1}).d1) == 2
        m7 = build_family(family_e7(), {f"c{k}": 1.0 for k in range(1, 5)})
        assert (m7.d1, m7.d2) == (6, 7)
        m8 = build_family(family_e8(), {f"c{k}": 1.0 for k in range(1, 6)})
        assert (m8.d1, m8.d2) == (6, 8)
        mh = build_family(hyperbolic_umbilic(), {"c": 2.0})
        assert (mh.d1, mh.d2) == (2, 2)

    def test_param_validation(self):
        with pytest.raises(MissingParam):
            build_family(family_d(5), {"c2": 1.0})
        with pytest.raises(ExtraParam):
            build_family(family_a(2), {"c9": 1.0})
        # complex params rejected unless explicitly allowed
        with pytest.raises(ValueError):
            build_family(hyperbolic_umbilic(), {"c": 1 + 2j})
        m = build_family(hyperbolic_umbilic(), {"c": 1 + 2j}, allow_complex=True)
        assert m.f1.coeff(0, 1) == 2 + 4j

    def test_family_id_validation(self):
        with pytest.raises(UnknownFamily):
            FamilyId("Q")
        with pytest.raises(ValueError):
            FamilyId("A", n=1, signs=(1, 1))
        with pytest.raises(ValueError):
            FamilyId("D", n=3, signs=(1,))
        with pytest.raises(ValueError):
            FamilyId("A", n=3, signs=(1,))
        with pytest.raises(ValueError):
            FamilyId("E7", n=7)

    def test_param_names(self):
        assert param_names(family_a(2)) == ()
        assert param_names(family_a(3)) == ()
        assert param_names(family_a(4)) == ("c3",)
        assert param_names(family_a(8)) == ("c3", "c4", "c5", "c6", "c7")
        assert param_names(family_d(4)) == ("c2",)
        assert param_names(family_d(8)) == ("c2", "c3", "c4", "c5", "c6")
        assert param_names(family_e8()) == ("c1", "c2", "c3", "c4", "c5")
        assert param_names(elliptic_umbilic()) == ("c",)

    def test_legacy_fold(self):
        m = build_family(family_a(2), legacy_fold=True)
        assert m.f1.as_dict() == {(2, 0): 3 + 0j}
        m = build_family(family_a(2, sx=-1), legacy_fold=True)
        assert m.f1.as_dict() == {(2, 0): -3 + 0j}
        with pytest.raises(ValueError):
            build_family(family_a(3), legacy_fold=True)

    def test_immutable(self):
        m = build_family(family_a(2))
        with pytest.raises(Exception):
            m.f1 = m.f2


class TestGeneratingFunction:
    def test_a2_bound_target_form(self):
        s1, s2 = 0.7, -1.3
        F = generating_function(family_a(2), {}, (s1, s2))
        assert F.as_dict() == {
            (3, 0): 1 + 0j,
            (0, 2): 1 + 0j,
            (2, 0): complex(s2),
            (1, 0): complex(-s1),
            (0, 1): complex(s2),
        }

    def test_elliptic_zero_target(self):
        F = generating_function(elliptic_umbilic(), {"c": 0.0}, (0.0, 0.0))
        assert F.as_dict() == {(3, 0): pytest.approx(1 / 3), (1, 2): -1 + 0j}

    def test_time_delay_keeps_kinetic_term(self):
        F = generating_function(hyperbolic_umbilic(), {"c": 1.0}, (1.0, 2.0))
        assert F.coeff(0, 0) == pytest.approx(0.5 * (1 + 4))

    def test_gradient_vanishes_at_preimages(self, family_ids):
        rng = random.Random(11)
        for fid in family_ids:
            params = random_params(fid, rng)
            m = build_family(fid, params)
            s = (rng.uniform(-4, 4), rng.uniform(-4, 4))
            try:
                ps = preimages(m, s)
            except (CausticTarget, DegenerateSystem):
                continue
            F = generating_function(fid, params, s)
            Fx, Fy = partial(F, "x"), partial(F, "y")
            for p in ps.preimages:
                assert abs(eval_bipoly(Fx, p.x, p.y)) < 1e-9
                assert abs(eval_bipoly(Fy, p.x, p.y)) < 1e-9


class TestJacobianHessianIdentity:
    def test_exact_identity_non_a_families(self, family_ids):
        # det(Jac f) = det(Hess F) identically, any target, for the D, E,
        # and lensing families
        rng = random.Random(12)
        for fid in family_ids:
            if fid.kind == "A":
                continue
            params = random_params(fid, rng)
            m = build_family(fid, params)
            for _ in range(100):
                x = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
                y = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
                s = (rng.uniform(-3, 3), rng.uniform(-3, 3))
                F = generating_function(fid, params, s)
                jd = jacobian_det(m, x, y)
                hd = hessian_det_at(F, x, y)
                assert abs(jd - hd) <= 1e-10 * (1 + abs(jd))

    def test_a_family_sign_relation(self):
        # For the A normal forms the two determinants differ by the sign of
        # the y^2 term: det Jac = -sy * det Hess at pre-image-consistent
        # targets (any point is a pre-image of its own image).
        rng = random.Random(13)
        for sx in (1, -1):
            for sy in (1, -1):
                for n in (2, 4, 6):
                    fid = family_a(n, sx, sy)
                    params = random_params(fid, rng)
                    m = build_family(fid, params)
                    for _ in range(25):
                        x, y = rng.uniform(-2, 2), rng.uniform(-2, 2)
                        s = (eval_bipoly(m.f1, x, y).real, eval_bipoly(m.f2, x, y).real)
                        F = generating_function(fid, params, s)
                        jd = jacobian_det(m, x, y)
                        hd = hessian_det_at(F, x, y)
                        assert abs(jd - (-sy) * hd) <= 1e-10 * (1 + abs(jd))


class TestAssignedWeights:
    def test_examples(self):
        assert assigned_weights(family_d(5)).as_tuple() == (3, 2, 1)
        assert assigned_weights(family_e8()).as_tuple() == (3, 2, 1)
        assert assigned_weights(family_a(7)).as_tuple() == (1, 1, 1)
        assert assigned_weights(family_d(4)).as_tuple() == (2, 2, 1)
        assert assigned_weights(family_e6()).as_tuple() == (1, 1, 1)
        assert assigned_weights(elliptic_umbilic()).as_tuple() == (1, 1, 1)
        assert assigned_weights(hyperbolic_umbilic()).as_tuple() == (1, 1, 1)

    def test_affine_weight_one_and_coprime_triple(self, family_ids):
        for fid in family_ids:
            w = assigned_weights(fid)
            assert w.a2 == 1
            assert math.gcd(math.gcd(w.a0, w.a1), w.a2) == 1


class TestParseFamily:
    def test_round_trips(self):
        assert parse_family("A2") == family_a(2)
        assert parse_family("A2+-") == family_a(2, 1, -1)
        assert parse_family("D5+") == family_d(5)
        assert parse_family("D6-") == family_d(6, -1)
        assert parse_family("E6-") == family_e6(-1)
        assert parse_family("e7") == family_e7()
        assert parse_family("E8") == family_e8()
        assert parse_family("elliptic") == elliptic_umbilic()
        assert parse_family("hyp") == hyperbolic_umbilic()
        assert parse_family("A", n=3, signs=(1, 1)) == family_a(3)

    def test_conflicts_and_garbage(self):
        with pytest.raises(ValueError):
            parse_family("A2", n=3)
        with pytest.raises(UnknownFamily):
            parse_family("Z9")
        with pytest.raises(UnknownFamily):
            parse_family("E9")

    def test_labels(self):
        assert family_a(2).label == "A2(+,+)"
        assert family_d(5, -1).label == "D5(-)"
        assert family_e6(-1).label == "E6(-)"
        assert hyperbolic_umbilic().label == "hyperbolic-umbilic"


class TestParamVector:
    def test_mapping_round_trip(self):
        pv = ParamVector.from_mapping({"c2": 1.5, "c3": -0.5})
        assert pv.as_dict() == {"c2": 1.5 + 0j, "c3": -0.5 + 0j}
        assert pv.get("c2") == 1.5
        assert pv.get("missing") == 0j
        assert len(pv) == 2
