import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complexes, radii
from torus_extremal.variety import (
    ON_VARIETY_TOL,
    LeafIndex,
    TorusParams,
    cylinder_residual,
    leaf_point,
    leaf_quartic,
    leaf_z3,
    membership_residual,
    membership_residual_alt,
    on_variety,
    param_point,
    phi_map,
    project,
    psi,
    psi_inverse,
    rotate,
    sample_real_torus,
)

angles = st.builds(
    complex, st.floats(0, 2 * math.pi), st.floats(-2, 2)
)


class TestParams:
    @pytest.mark.parametrize("r, R", [(1, 1), (2, 1), (0, 1), (-1, 2), (1, math.inf)])
    def test_rejects(self, r, R):
        with pytest.raises(ValueError):
            TorusParams(r=r, R=R)

    def test_leaf_signs(self):
        with pytest.raises(ValueError):
            LeafIndex(0, 1)


class TestResidual:
    def test_examples(self, p21):
        assert membership_residual(p21, (3, 0, 0)) == 0
        assert membership_residual(p21, (0, 0, 0)) == pytest.approx(9.0)
        assert not on_variety(p21, (0, 0, 0))
        assert membership_residual(p21, param_point(p21, 0.7, 1.3)) <= 1e-14

    @settings(max_examples=300)
    @given(radii(), angles, angles)
    def test_round_trip(self, p, th, ph):
        assert membership_residual(p, param_point(p, th, ph)) <= 1e-11

    def test_two_equations_agree(self):
        rng = np.random.default_rng(3)
        p = TorusParams(r=1.0, R=2.0)
        agree = 0
        for i in range(10_000):
            if i % 2:
                z = param_point(p, complex(*rng.uniform(-2, 2, 2)), complex(*rng.uniform(-2, 2, 2)))
                # nudge half of them off the surface by varying amounts
                z = (z[0] + 10.0 ** rng.uniform(-14, -6), z[1], z[2])
            else:
                z = tuple(complex(*rng.uniform(-4, 4, 2)) for _ in range(3))
            a = membership_residual(p, z) <= ON_VARIETY_TOL
            b = membership_residual_alt(p, z) <= ON_VARIETY_TOL
            agree += a == b
        assert agree >= 9_990

    def test_alt_equation_on_samples(self, p21):
        for z in sample_real_torus(p21, 16, 16):
            assert membership_residual_alt(p21, z) <= 1e-14


class TestParamPoint:
    def test_examples(self, p21):
        assert param_point(p21, 0, 0) == (3, 0, 0)
        assert param_point(p21, math.pi, 0)[0] == pytest.approx(1.0)
        z = param_point(p21, 1j, 0)
        assert z[0] == pytest.approx(2 + math.cosh(1))
        assert z[2] == pytest.approx(1j * math.sinh(1))

    def test_overflow_bound(self, p21):
        with pytest.raises(OverflowError):
            param_point(p21, 701j, 0)
        param_point(p21, 699j, 0)

    def test_nan(self, p21):
        with pytest.raises(ValueError):
            param_point(p21, math.nan, 0)


class TestSamples:
    def test_small(self, p21):
        assert sample_real_torus(p21, 1, 1) == [(3, 0, 0)]
        pts = sample_real_torus(p21, 2, 1)
        assert pts[0] == (3, 0, 0)
        assert pts[1][0] == pytest.approx(1.0)

    def test_real(self, p21):
        pts = sample_real_torus(p21, 4, 4)
        assert len(pts) == 16
        assert all(c.imag == 0 for z in pts for c in z)

    def test_bad_counts(self, p21):
        with pytest.raises(ValueError):
            sample_real_torus(p21, 0, 3)


class TestPsi:
    def test_examples(self, p21):
        assert psi(p21, (3, 0, 0)) == (3, 9, 0)
        assert psi(p21, (0, 3, 0)) == (3, 9, 9)

    @given(radii())
    def test_outer_equator(self, p):
        w = psi(p, (p.R + p.r, 0, 0))
        assert w[0] == pytest.approx(p.R + p.r, rel=1e-14)

    def test_inverse_examples(self, p21):
        pre = psi_inverse(p21, (3, 9, 0))
        assert (3, 0, 0) in pre and (-3, 0, 0) in pre
        assert (0, 3, 0) in psi_inverse(p21, (3, 9, 9))

    @given(complexes(5), complexes(25))
    def test_inverse_is_right_inverse(self, w1, w3):
        p = TorusParams(r=1.0, R=2.0)
        w = (w1, w1 * w1, w3)
        for z in psi_inverse(p, w):
            assert membership_residual(p, z) <= 1e-10
            img = psi(p, z)
            assert max(abs(a - b) for a, b in zip(img, w)) <= 1e-10 * (1 + abs(w1) ** 2 + abs(w3))

    @settings(max_examples=300)
    @given(angles, angles)
    def test_round_trip_from_variety(self, th, ph):
        p = TorusParams(r=1.0, R=2.0)
        z = param_point(p, th, ph)
        pre = psi_inverse(p, psi(p, z))
        scale = 1 + max(abs(c) for c in z)
        # recovering a coordinate from its square is only Holder-1/2 conditioned
        assert min(max(abs(a - b) for a, b in zip(q, z)) for q in pre) <= 1e-7 * scale

    def test_image_on_cylinder(self, p21):
        z = param_point(p21, 0.3 + 0.4j, -1.1 + 0.2j)
        assert cylinder_residual(psi(p21, z)) <= 1e-14

    def test_project(self):
        assert project((1, 2, 3)) == (1, 3)


class TestLeaves:
    def test_examples(self, p21):
        assert leaf_z3(p21, 3, 0, LeafIndex(1, 1)) == 0
        z3 = leaf_z3(p21, 3, 0, LeafIndex(-1, 1))
        assert abs(z3) == pytest.approx(2 * math.sqrt(6)) and z3.real == 0
        assert leaf_z3(p21, 2, 0, LeafIndex(1, 1)) == pytest.approx(1.0)
        assert leaf_z3(p21, 2, 0, LeafIndex(1, -1)) == pytest.approx(-1.0)

    @given(complexes(6), complexes(6))
    def test_vieta(self, z1, z2):
        p = TorusParams(r=1.0, R=2.0)
        roots = [leaf_z3(p, z1, z2, LeafIndex(a, b)) for a in (1, -1) for b in (1, -1)]
        coeffs = leaf_quartic(p, z1, z2)
        poly = np.poly(roots)
        scale = 1 + max(abs(c) for c in coeffs)
        assert np.max(np.abs(poly - np.asarray(coeffs))) <= 1e-9 * scale
        for z3 in roots:
            assert membership_residual(p, (z1, z2, z3)) <= 1e-10

    def test_leaf_point(self, p21):
        assert leaf_point(p21, 3, 0, LeafIndex()) == (3, 0, 0)


class TestRotation:
    @given(angles, angles, st.floats(-10, 10), st.floats(1e-13, 1e-11))
    def test_closure(self, th, ph, alpha, eps):
        p = TorusParams(r=1.0, R=2.0)
        z = param_point(p, th, ph)
        z = (z[0], z[1], z[2] + eps)
        before = membership_residual(p, z)
        after = membership_residual(p, rotate(z, alpha))
        assert after <= 2 * before + 1e-15


def test_phi_map(p21):
    assert phi_map(p21, (2, 0)) == (0, 0)
    assert phi_map(p21, (3, 4)) == (1, 2)
    assert phi_map(p21, (1, -1)) == (-1, 1j)
