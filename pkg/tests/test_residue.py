import random

import pytest

from caustica import (
    BiPoly,
    Weights,
    build_family,
    degree_criterion,
    family_a,
    family_d,
    family_e7,
    hyperbolic_umbilic,
    preimages,
    residue_at_root,
    total_signed_magnification,
    verify_grt,
)
from caustica.errors import CausticTarget, NonSimpleRoot
from caustica.residue import VERDICT_DEGREE, VERDICT_INCONCLUSIVE, VERDICT_NO_ROOTS
from oracles import draw_noncaustic

W321 = Weights(3, 2, 1)


class TestResidueAtRoot:
    def test_a2_values(self):
        m = build_family(family_a(2))
        assert residue_at_root(m, 2.0 / 3.0, -1.0) == pytest.approx(-1.0 / 16.0, abs=1e-14)

    def test_unit_jacobian_residue(self):
        m = build_family(family_a(2))
        assert residue_at_root(m, -1.0 / 12.0, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_non_simple_root(self):
        m = build_family(hyperbolic_umbilic(), {"c": 1.0})
        with pytest.raises(NonSimpleRoot):
            residue_at_root(m, 1.0, 1.0)

    def test_identical_to_solver_magnification(self):
        m = build_family(family_d(5), {"c2": 0.2, "c3": 1.0})
        ps = preimages(m, (0.9, -1.3))
        for p in ps.preimages:
            assert residue_at_root(m, p.x, p.y) == p.magnification


class TestDegreeCriterion:
    def test_e7_examples(self):
        assert degree_criterion(7, 6, 7, W321) is True
        assert degree_criterion(8, 6, 7, W321) is False

    def test_constant_numerator_all_families(self, family_ids):
        from caustica import assigned_weights, build_family
        from oracles import random_params

        rng = random.Random(40)
        for fid in family_ids:
            m = build_family(fid, random_params(fid, rng))
            w = assigned_weights(fid)
            assert degree_criterion(0, m.d1, m.d2, w), fid.label

    def test_monotonicity(self):
        for k in range(8):
            if degree_criterion(k, 6, 7, W321):
                assert all(degree_criterion(j, 6, 7, W321) for j in range(k + 1))


class TestVerifyGrt:
    def test_d5_default_numerator(self):
        m = build_family(family_d(5), {"c2": -0.4, "c3": 0.9})
        rep = verify_grt(m, (1.1, 0.6))
        assert rep.grt_verdict == VERDICT_NO_ROOTS
        assert rep.infinity_roots == ()
        assert abs(rep.affine_residue_sum) <= rep.tolerance
        assert rep.vanishing_guaranteed and rep.within_tolerance

    def test_e7_degree_seven_numerator(self):
        m = build_family(family_e7(), {"c1": 0.5, "c2": -0.7, "c3": 1.1, "c4": 0.3})
        h = BiPoly.from_dict({(1, 2): 1.0})  # weighted degree 3 + 4 = 7
        rep = verify_grt(m, (1.5, -2.0), h=h)
        assert rep.numerator_weighted_degree == 7
        assert rep.grt_verdict == VERDICT_DEGREE
        assert abs(rep.affine_residue_sum) <= rep.tolerance

    def test_e7_degree_eight_inconclusive(self):
        m = build_family(family_e7(), {"c1": 0.5, "c2": -0.7, "c3": 1.1, "c4": 0.3})
        h = BiPoly.from_dict({(2, 1): 1.0})  # weighted degree 8: at the bound
        rep = verify_grt(m, (1.5, -2.0), h=h)
        assert rep.grt_verdict == VERDICT_INCONCLUSIVE
        assert not rep.vanishing_guaranteed
        assert abs(rep.affine_residue_sum) > 1e-3  # reported, not asserted zero

    def test_consistency_with_solver_total(self, family_ids):
        rng = random.Random(41)
        for fid in family_ids[::4]:
            m, ps, _ = draw_noncaustic(fid, rng)
            rep = verify_grt(m, (ps.target.s1.real, ps.target.s2.real))
            assert rep.affine_residue_sum == total_signed_magnification(ps, "all_complex")

    def test_caustic_target_propagates(self):
        m = build_family(hyperbolic_umbilic(), {"c": 1.0})
        with pytest.raises(CausticTarget):
            verify_grt(m, (3.0, 3.0))

    def test_report_invariant_random_draws(self, family_ids):
        rng = random.Random(42)
        for fid in family_ids[::3]:
            m, ps, _ = draw_noncaustic(fid, rng)
            rep = verify_grt(m, (ps.target.s1.real, ps.target.s2.real))
            if not rep.infinity_roots:
                assert abs(rep.affine_residue_sum) <= rep.tolerance
