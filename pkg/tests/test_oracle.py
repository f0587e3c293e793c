import json
import math

import numpy as np
import pytest

from conftest import LOG_3_2R2
from torus_extremal.formulas import v_interval, v_torus
from torus_extremal.geometry import monomial_exponents, sigma_21
from torus_extremal.oracle import (
    OracleConfig,
    OracleUnbounded,
    chebyshev_oracle,
    convergence_sweep,
    interval_samples,
    lp_envelope,
    simplex_samples,
    total_degree,
)
from torus_extremal.variety import TorusParams, param_point, sample_real_torus

LOG_2_R3 = math.log(2 + math.sqrt(3))


class TestChebyshev:
    def test_degree_one(self):
        assert chebyshev_oracle(2, 1) == pytest.approx(math.log(2), rel=1e-15)

    def test_degree_four(self):
        assert chebyshev_oracle(2, 4) == pytest.approx(math.log(97) / 4, rel=1e-15)

    @pytest.mark.parametrize("x", np.linspace(-1, 1, 9))
    def test_on_interval(self, x):
        assert chebyshev_oracle(x, 5) <= 1e-15

    def test_zero_of_t_k(self):
        assert chebyshev_oracle(0.0, 3) == -math.inf

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            chebyshev_oracle(2, 0)

    @pytest.mark.parametrize("z", [2.0, 1 + 1j, 3j, 1.01, 0.5 + 0.01j])
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 8, 16, 32])
    def test_sandwich(self, z, k):
        # T_k = (h^k + h^-k) / 2
        v = v_interval(z)
        gap = v - chebyshev_oracle(z, k)
        bound = (math.log(2) - math.log1p(-math.exp(-2 * k * v))) / k
        assert -1e-13 <= gap <= bound + 1e-12


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            OracleConfig(degree=0, polytope=total_degree(1))
        with pytest.raises(ValueError):
            OracleConfig(degree=2, polytope=total_degree(1), directions=4)
        with pytest.raises(ValueError):
            OracleConfig(degree=30, polytope=total_degree(3))  # 5456 monomials

    def test_bad_samples(self):
        cfg = OracleConfig(degree=2, polytope=total_degree(2))
        with pytest.raises(ValueError):
            lp_envelope(cfg, [], (0, 0))
        with pytest.raises(ValueError):
            lp_envelope(cfg, [(0,), (1,)], (0, 0))


@pytest.fixture(scope="module")
def interval_k8():
    cfg = OracleConfig(degree=8, polytope=total_degree(1))
    return lp_envelope(cfg, interval_samples(201), (2.0,))


class TestInterval:
    def test_bracket(self, interval_k8):
        gap = LOG_2_R3 - interval_k8.lower_value
        assert -0.02 <= gap <= 0.15

    def test_beats_chebyshev(self, interval_k8):
        # T_8 is feasible, so the optimum cannot be below it
        assert interval_k8.raw_value >= chebyshev_oracle(2.0, 8) - 1e-9

    def test_feasibility_certificate(self, interval_k8):
        assert interval_k8.sample_max_modulus <= 1 + 1e-9

    def test_report(self, interval_k8):
        d = json.loads(interval_k8.to_json())
        assert set(d) == {"degree", "basis_size", "raw_value", "lower_value", "solver_iterations", "wall_time_ms"}
        assert d["basis_size"] == 9 and d["degree"] == 8

    def test_sample_point(self):
        cfg = OracleConfig(degree=1, polytope=total_degree(1))
        est = lp_envelope(cfg, interval_samples(21), (0.3,))
        assert est.lower_value <= 1e-9

    def test_scale_invariance(self):
        cfg = OracleConfig(degree=6, polytope=total_degree(1))
        rng = np.random.default_rng(11)
        scale = rng.uniform(0.1, 10, 7) * np.exp(1j * rng.uniform(0, 2 * np.pi, 7))
        a = lp_envelope(cfg, interval_samples(101), (1 + 1j,))
        b = lp_envelope(cfg, interval_samples(101), (1 + 1j,), basis_scale=scale)
        assert abs(a.lower_value - b.lower_value) <= 1e-9

    def test_sweep(self):
        cfg = OracleConfig(degree=8, polytope=total_degree(1))
        est = convergence_sweep(cfg, interval_samples(201), (2.0,), [2, 4, 8])
        vals = [e.lower_value for e in est]
        assert all(b >= a - 1e-8 for a, b in zip(vals, vals[1:]))
        assert LOG_2_R3 - vals[-1] <= 0.1

    def test_sweep_needs_ascending(self):
        cfg = OracleConfig(degree=4, polytope=total_degree(1))
        with pytest.raises(ValueError):
            convergence_sweep(cfg, interval_samples(11), (2.0,), [4, 2])


def test_simplex_from_below():
    cfg = OracleConfig(degree=8, polytope=total_degree(2))
    est = convergence_sweep(cfg, simplex_samples(40), (2.0, 0.0), [2, 4, 8])
    vals = [e.lower_value for e in est]
    assert all(b >= a - 1e-8 for a, b in zip(vals, vals[1:]))
    assert all(v <= LOG_3_2R2 + 0.02 for v in vals)
    assert -0.02 <= LOG_3_2R2 - vals[-1] <= 0.2


def test_thin_samples_unbounded():
    cfg = OracleConfig(degree=4, polytope=total_degree(2))
    # points on a line cannot pin down polynomials in two variables
    samples = [(complex(t), complex(t)) for t in np.linspace(0, 1, 30)]
    with pytest.raises(OracleUnbounded) as info:
        lp_envelope(cfg, samples, (0.3, 0.9))
    assert info.value.code == "ORACLE_UNBOUNDED"


def test_unbounded_ignores_rounding_noise():
    p = TorusParams(r=1.0, R=2.0)
    cfg = OracleConfig(degree=2, polytope=total_degree(3))
    with pytest.raises(OracleUnbounded):
        lp_envelope(cfg, sample_real_torus(p, 2, 2), param_point(p, 0.5j, 0))


def test_sigma21_basis():
    cfg = OracleConfig(degree=3, polytope=sigma_21())
    assert len(monomial_exponents(cfg.polytope, 3)) == 16


def test_torus_degree_four():
    p = TorusParams(r=1.0, R=2.0)
    z = param_point(p, 0.5j, 0)
    cfg = OracleConfig(degree=4, polytope=total_degree(3))
    est = lp_envelope(cfg, sample_real_torus(p, 24, 24), z)
    assert 0 < est.lower_value <= v_torus(p, z).value + 0.05
    # the defining quartic is the only relation among monomials of degree <= 4
    assert (est.basis_size, est.rank) == (35, 34)
    assert est.sample_max_modulus <= 1 + 1e-9
