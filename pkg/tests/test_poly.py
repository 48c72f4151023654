import random

import numpy as np
import pytest

from caustica import build_family, family_a, family_d, hyperbolic_umbilic
from caustica.errors import BothConstantInVar, ZeroPolynomial
from caustica.poly import (
    BiPoly,
    UniPoly,
    eval_bipoly,
    jacobian_det,
    jacobian_det_poly,
    partial,
    resultant_eliminate,
    uniroots,
)
from oracles import fd_jacobian_det, resultant_value_oracle


def bp(d):
    return BiPoly.from_dict(d)


def rand_bipoly(rng, max_deg=3, complex_coeffs=True):
    d = {}
    for _ in range(rng.randint(2, 6)):
        i, j = rng.randint(0, max_deg), rng.randint(0, max_deg)
        c = rng.uniform(-2, 2) + (1j * rng.uniform(-2, 2) if complex_coeffs else 0)
        d[(i, j)] = c
    p = bp(d)
    return p if not p.is_zero else bp({(1, 0): 1.0})


class TestEval:
    def test_monomial(self):
        assert eval_bipoly(bp({(1, 1): 2}), 3, 4) == 24

    def test_direct_sum(self):
        p = bp({(2, 0): 1, (0, 3): 4, (0, 2): 3, (0, 1): 2})
        assert eval_bipoly(p, 1, 1) == 10

    def test_zero_polynomial(self):
        assert eval_bipoly(BiPoly.zero(), 2.3 + 1j, -0.5) == 0

    def test_matches_numpy_polyval(self):
        rng = random.Random(1)
        for _ in range(20):
            p = rand_bipoly(rng)
            x = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            y = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            ref = sum(c * x**i * y**j for i, j, c in p.terms)
            assert abs(eval_bipoly(p, x, y) - ref) <= 1e-12 * (1 + abs(ref))


class TestPartial:
    def test_x_cube_plus_y_square(self):
        assert partial(bp({(3, 0): 1, (0, 2): 1}), "x").as_dict() == {(2, 0): 3}

    def test_two_x_y(self):
        assert partial(bp({(1, 1): 2}), "y").as_dict() == {(1, 0): 2}

    def test_y_only_poly(self):
        assert partial(bp({(0, 5): 3, (0, 1): -1}), "x").is_zero

    def test_mixed_partials_commute(self):
        rng = random.Random(2)
        for _ in range(20):
            p = rand_bipoly(rng, max_deg=5)
            pxy = partial(partial(p, "x"), "y").as_dict()
            pyx = partial(partial(p, "y"), "x").as_dict()
            assert pxy.keys() == pyx.keys()
            for k in pxy:
                assert abs(pxy[k] - pyx[k]) <= 1e-14 * abs(pxy[k])


class TestJacobianDet:
    def test_hyperbolic_umbilic(self):
        m = build_family(hyperbolic_umbilic(), {"c": 1.0})
        # det Jac = 4xy - 4c^2
        for x, y in [(0.3, -1.2), (2.0, 0.5), (-1.0, -1.0)]:
            assert abs(jacobian_det(m, x, y) - (4 * x * y - 4)) < 1e-12
        assert abs(jacobian_det(m, 1.0, 1.0)) < 1e-14  # critical point

    def test_a2_at_point(self):
        m = build_family(family_a(2))
        assert jacobian_det(m, 1.0, 0.0) == -12

    def test_nonzero_at_noncaustic_preimages(self):
        from caustica import preimages

        m = build_family(family_d(5), {"c2": 0.4, "c3": -0.8})
        ps = preimages(m, (1.3, -0.7))
        for p in ps.preimages:
            assert abs(p.jac_det) > 1e-8

    def test_against_finite_differences(self):
        rng = random.Random(3)
        maps = [
            build_family(family_a(4), {"c3": 0.7}),
            build_family(family_d(6, -1), {"c2": 1.1, "c3": -0.2, "c4": 0.5}),
            build_family(hyperbolic_umbilic(), {"c": 0.8}),
        ]
        for m in maps:
            for _ in range(10):
                x, y = rng.uniform(-2, 2), rng.uniform(-2, 2)
                jd = jacobian_det(m, x, y)
                fd = fd_jacobian_det(m, x, y)
                assert abs(jd - fd) <= 1e-5 * (1 + abs(jd))

    def test_poly_form_matches_pointwise(self):
        m = build_family(family_d(5), {"c2": 0.4, "c3": -0.8})
        jp = jacobian_det_poly(m)
        rng = random.Random(4)
        for _ in range(10):
            x = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            y = rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2)
            assert abs(eval_bipoly(jp, x, y) - jacobian_det(m, x, y)) < 1e-10


class TestResultant:
    def test_linear_constants(self):
        a, b = 2.5, -1.25
        p = bp({(1, 0): 1, (0, 0): -a})
        q = bp({(1, 0): 1, (0, 0): -b})
        r = resultant_eliminate(p, q, "x")
        assert r.degree == 0
        assert abs(abs(r.coeffs[0]) - abs(a - b)) < 1e-14

    def test_linear_in_x_poly_in_y(self):
        # p = x - (y + 1), q = x - 2y^2 -> resultant prop to (y + 1) - 2y^2
        p = bp({(1, 0): 1, (0, 1): -1, (0, 0): -1})
        q = bp({(1, 0): 1, (0, 2): -2})
        r = resultant_eliminate(p, q, "x")
        expect = np.array([1.0, 1.0, -2.0])
        got = np.array(r.coeffs)
        ratio = got[0] / expect[0]
        assert np.allclose(got, ratio * expect)

    def test_d5_elimination_exact(self):
        # D5 (+ sign, c2 = c3 = 0) shifted by s = (1, 1): the x-eliminant
        # is 16y^5 - 4y^2 + 1 on the nose
        p = bp({(1, 1): 2, (0, 0): -1.0})
        q = bp({(2, 0): 1, (0, 3): 4, (0, 0): -1.0})
        r = resultant_eliminate(p, q, "x")
        assert r.coeffs == (1 + 0j, 0j, (-4 + 0j), 0j, 0j, (16 + 0j))

    def test_shared_factor_gives_zero(self):
        p = bp({(2, 0): 1, (1, 1): -3, (0, 0): 2})
        assert resultant_eliminate(p, p, "x").is_zero

    def test_antisymmetry_up_to_sign(self):
        rng = random.Random(5)
        for _ in range(10):
            p, q = rand_bipoly(rng), rand_bipoly(rng)
            try:
                r1 = resultant_eliminate(p, q, "y")
                r2 = resultant_eliminate(q, p, "y")
            except BothConstantInVar:
                continue
            c1 = np.array(r1.coeffs)
            c2 = np.array(r2.coeffs)
            assert c1.shape == c2.shape
            if c1.size:
                assert np.allclose(c1, c2, atol=1e-8) or np.allclose(c1, -c2, atol=1e-8)

    def test_invariance_under_multiple_addition(self):
        # Res(p, q + h p) = Res(p, q) while deg_x(h p) < deg_x(q)
        rng = random.Random(6)
        p = bp({(2, 0): 1, (1, 1): 0.5, (0, 2): -1, (0, 0): 0.3})
        q = bp({(3, 0): 2, (1, 0): -1, (0, 1): 1})
        h = bp({(0, 1): rng.uniform(-1, 1)})
        r1 = resultant_eliminate(p, q, "x")
        r2 = resultant_eliminate(p, q + h * p, "x")
        n = max(len(r1.coeffs), len(r2.coeffs))
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: len(r1.coeffs)] = r1.coeffs
        b[: len(r2.coeffs)] = r2.coeffs
        assert np.allclose(a, b, atol=1e-9)

    def test_symbolic_vs_numeric_paths(self):
        rng = random.Random(7)
        for _ in range(8):
            p, q = rand_bipoly(rng, max_deg=2), rand_bipoly(rng, max_deg=2)
            try:
                sym = resultant_eliminate(p, q, "x")
                num = resultant_eliminate(p, q, "x", force_numeric=True)
            except BothConstantInVar:
                continue
            n = max(len(sym.coeffs), len(num.coeffs), 1)
            a = np.zeros(n, complex)
            b = np.zeros(n, complex)
            a[: len(sym.coeffs)] = sym.coeffs
            b[: len(num.coeffs)] = num.coeffs
            scale = max(np.abs(a).max(), 1e-30)
            assert np.allclose(a, b, atol=1e-9 * scale)

    def test_product_formula_oracle(self):
        rng = random.Random(8)
        for _ in range(8):
            p, q = rand_bipoly(rng, max_deg=3), rand_bipoly(rng, max_deg=3)
            if p.deg_in("x") < 1 or q.deg_in("x") < 1:
                continue
            r = resultant_eliminate(p, q, "x")
            for _ in range(3):
                t = rng.uniform(-1.5, 1.5) + 1j * rng.uniform(-1.5, 1.5)
                want = resultant_value_oracle(p, q, "x", t)
                got = r.eval(t)
                assert abs(got - want) <= 1e-6 * (1 + abs(want))

    def test_both_constant_raises(self):
        p = bp({(0, 2): 1})
        with pytest.raises(BothConstantInVar):
            resultant_eliminate(p, p, "x")

    def test_zero_poly_raises(self):
        with pytest.raises(ZeroPolynomial):
            resultant_eliminate(BiPoly.zero(), bp({(1, 0): 1}), "x")

    def test_numeric_leading_drop_warns(self):
        p = bp({(2, 0): 1e-15, (1, 0): 1.0, (0, 1): -1.0})
        q = bp({(1, 0): 1, (0, 0): -2.0})
        with pytest.warns(UserWarning, match="numerically zero"):
            r = resultant_eliminate(p, q, "x")
        # degree dropped: effectively Res(x - y, x - 2) prop to (y - 2)
        assert r.degree == 1


class TestUniroots:
    def test_quadratic(self):
        r = uniroots(UniPoly.from_coeffs([-1, 0, 1]))
        vals = sorted(v.real for v in r.values())
        assert vals == pytest.approx([-1.0, 1.0])
        assert all(root.multiplicity == 1 for root in r.roots)

    def test_triple_root_cluster(self):
        # (z - 2)^3 = z^3 - 6z^2 + 12z - 8
        r = uniroots(UniPoly.from_coeffs([-8, 12, -6, 1]))
        assert len(r.roots) == 1
        assert r.roots[0].multiplicity == 3
        assert abs(r.roots[0].value - 2) < 1e-4

    def test_pure_monomial(self):
        r = uniroots(UniPoly.from_coeffs([0, 0, 0, 2.0]))
        assert len(r.roots) == 1
        assert r.roots[0].value == 0
        assert r.roots[0].multiplicity == 3

    def test_d5_eliminant_count(self):
        r = uniroots(UniPoly.from_coeffs([1, 0, -4, 0, 0, 16]))
        assert r.total_count == 5
        assert sum(root.multiplicity for root in r.roots) == r.source_degree

    def test_residuals_within_tolerance(self):
        r = uniroots(UniPoly.from_coeffs([1, 0, -4, 0, 0, 16]))
        for root in r.roots:
            assert root.residual <= 1e-8

    def test_reconstruction(self):
        rng = random.Random(9)
        for _ in range(15):
            deg = rng.randint(1, 8)
            cs = [rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2) for _ in range(deg)] + [
                rng.uniform(0.5, 2)
            ]
            p = UniPoly.from_coeffs(cs)
            roots = uniroots(p)
            rec = np.array([p.coeffs[-1]])
            for root in roots.roots:
                for _ in range(root.multiplicity):
                    rec = np.convolve(rec, [-root.value, 1.0])
            scale = max(abs(c) for c in p.coeffs)
            assert np.allclose(rec, p.coeffs, atol=1e-8 * scale)

    def test_matches_companion_matrix_oracle(self):
        rng = random.Random(10)
        for _ in range(15):
            deg = rng.randint(2, 8)
            cs = [rng.uniform(-2, 2) + 1j * rng.uniform(-2, 2) for _ in range(deg)] + [1.0]
            mine = sorted(
                uniroots(UniPoly.from_coeffs(cs)).with_multiplicity(),
                key=lambda z: (round(z.real, 6), round(z.imag, 6)),
            )
            ref = sorted(
                np.roots(cs[::-1]).tolist(), key=lambda z: (round(z.real, 6), round(z.imag, 6))
            )
            for a, b in zip(mine, ref):
                assert abs(a - b) < 1e-6 * (1 + abs(b))

    def test_deterministic_for_fixed_seed(self):
        p = UniPoly.from_coeffs([1, 2, 3, 4, 5, 6.0])
        a = uniroots(p, seed=42)
        b = uniroots(p, seed=42)
        assert a == b

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            uniroots(UniPoly.from_coeffs([3.0]))
        with pytest.raises(ZeroPolynomial):
            uniroots(UniPoly.from_coeffs([]))
