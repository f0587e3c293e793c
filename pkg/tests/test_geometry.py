import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LOG_3_2R2, complexes
from torus_extremal.geometry import (
    DegreePolytope,
    SymmetricBodySpec,
    TrapezoidData,
    baran_symmetric,
    body_from_json,
    cube_body,
    log_support,
    monomial_exponents,
    polytope_from_json,
    polytope_to_json,
    sigma_21,
    simplex,
    support_function,
)

POLYTOPES = [simplex(2), simplex(3), sigma_21()]


class TestDegreePolytope:
    def test_rejects_negative_vertex(self):
        with pytest.raises(ValueError):
            DegreePolytope(2, [(0, 0), (-1, 1), (1, 0)])

    def test_needs_origin(self):
        with pytest.raises(ValueError):
            DegreePolytope(2, [(1, 0), (0, 1), (1, 1)])

    def test_needs_every_axis(self):
        with pytest.raises(ValueError):
            DegreePolytope(2, [(0, 0), (1, 0)])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            DegreePolytope(2, [(0, 0, 0), (1, 0, 0)])

    def test_derived_facets_match_exact_ones(self):
        derived = DegreePolytope(2, sigma_21().vertices)
        pts = [(x, y) for x in np.linspace(-0.5, 2.5, 13) for y in np.linspace(-0.5, 1.5, 9)]
        for x in pts:
            assert derived.contains(x, 1e-12) == sigma_21().contains(x, 1e-12)

    def test_exact_membership_on_boundary(self):
        P = sigma_21()
        assert P.contains((Fraction(1), Fraction(1, 2)))
        assert not P.contains((Fraction(1), Fraction(51, 100)))

    def test_json_round_trip(self):
        P = sigma_21()
        Q = polytope_from_json(polytope_to_json(P))
        assert Q.vertices == P.vertices and Q.dimension == 2


class TestSupport:
    def test_simplex_is_max_norm(self):
        assert support_function(simplex(2), (3, 5)) == 5

    @pytest.mark.parametrize("x, v", [((1, 0), 2), ((0, 1), 1)])
    def test_sigma21(self, x, v):
        assert support_function(sigma_21(), x) == v

    def test_dimension_checked(self):
        with pytest.raises(ValueError):
            support_function(simplex(2), (1, 2, 3))

    @given(
        st.sampled_from(POLYTOPES),
        st.lists(st.floats(0, 100), min_size=3, max_size=3),
        st.floats(0, 100),
    )
    def test_positively_homogeneous(self, P, x, lam):
        x = x[: P.dimension]
        a = support_function(P, [lam * c for c in x])
        b = lam * support_function(P, x)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    def test_log_support_examples(self):
        e = math.e
        assert log_support(simplex(2), (e * e, e)) == pytest.approx(2)
        assert log_support(sigma_21(), (e, 1)) == pytest.approx(2)
        assert log_support(sigma_21(), (1, e**3)) == pytest.approx(3)

    def test_log_support_zero_coordinate(self):
        # the origin vertex keeps the value finite; a vertex using z1 = 0 drops out
        assert log_support(sigma_21(), (0, math.e)) == pytest.approx(1)
        assert log_support(sigma_21(), (0, 0)) == 0.0


class TestMonomials:
    def test_simplex_degree_one(self):
        assert set(monomial_exponents(simplex(2), 1)) == {(0, 0), (0, 1), (1, 0)}

    def test_sigma21_degree_one(self):
        assert set(monomial_exponents(sigma_21(), 1)) == {(0, 0), (1, 0), (2, 0), (0, 1)}

    @pytest.mark.parametrize("k", range(0, 9))
    def test_count_in_three_variables(self, k):
        assert len(monomial_exponents(simplex(3), k)) == math.comb(k + 3, 3)

    def test_sorted(self):
        exps = monomial_exponents(sigma_21(), 3)
        assert exps == sorted(exps)

    @given(st.sampled_from(POLYTOPES), st.integers(0, 7))
    def test_nested(self, P, k):
        assert set(monomial_exponents(P, k)) <= set(monomial_exponents(P, k + 1))

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            monomial_exponents(simplex(2), -1)


class TestBaran:
    def test_interval(self):
        B = SymmetricBodySpec(1, [(1.0,)])
        assert B.polar_extremal_points == ((1.0,), (-1.0,))
        assert baran_symmetric(B, (1.25,)) == pytest.approx(math.log(2), rel=1e-15)

    def test_square(self):
        assert baran_symmetric(cube_body(2), (3, 0)) == pytest.approx(LOG_3_2R2, rel=1e-14)

    def test_empty(self):
        with pytest.raises(ValueError):
            SymmetricBodySpec(2, [])

    @given(complexes(), complexes())
    def test_even_and_nonnegative(self, a, b):
        B = SymmetricBodySpec(2, [(1.0, 0.5), (0.2, 1.0)])
        v = baran_symmetric(B, (a, b))
        assert v >= 0
        assert abs(v - baran_symmetric(B, (-a, -b))) <= 1e-13

    def test_zero_on_body(self):
        B = cube_body(2)
        for x in np.linspace(-1, 1, 21):
            for y in np.linspace(-1, 1, 21):
                assert baran_symmetric(B, (x, y)) <= 1e-12

    def test_json(self):
        B = body_from_json('{"dimension": 2, "vertices": [[1, 0], [0, 1]]}')
        assert len(B.polar_extremal_points) == 4


class TestTrapezoidData:
    @pytest.fixture
    def data(self):
        return TrapezoidData(r=1.0, R=2.0)

    def test_apex_and_vertices(self, data):
        assert data.apply_L((-2.0, 0.0)) == (0.0, 0.0)
        s = data.apply_L((1.0, 3.0))
        assert s == pytest.approx((1.0, 0.0))
        assert data.apply_L((1.0, -3.0)) == pytest.approx((0.0, 1.0))

    def test_directions(self, data):
        (a, b), (c, d), (e, f) = data.y
        assert (e, f) == (a + c, b + d)

    def test_k_inside_k2(self, data):
        for v in data.k_vertices:
            assert data.in_k2(v, 1e-12) and data.in_k(v, 1e-12)

    def test_rejects_bad_radii(self):
        with pytest.raises(ValueError):
            TrapezoidData(r=2.0, R=1.0)
