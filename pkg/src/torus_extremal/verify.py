"""Invariant suites run by ``torus-extremal verify``.

Each check returns a :class:`CheckResult`; randomized checks draw from a
``numpy`` generator seeded by the caller.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import formulas as F
from .oracle import (
    OracleConfig,
    chebyshev_oracle,
    convergence_sweep,
    interval_samples,
    simplex_samples,
    total_degree,
)
from .variety import (
    LeafIndex,
    TorusParams,
    leaf_point,
    leaf_quartic,
    membership_residual,
    param_point,
    psi,
    psi_inverse,
    rotate,
    sample_real_torus,
)

TORUS_PARAMS = ((2.0, 1.0), (5.0, 0.5), (1.5, 1.4))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def _cplx(rng, n, scale):
    return scale * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))


def random_variety_points(rng, p, n, imag_bound=1.5):
    """Points ``param_point(theta, phi)`` with real parts in [0, 2pi) and bounded imaginary parts."""
    th = rng.uniform(0, 2 * math.pi, n) + 1j * rng.uniform(-imag_bound, imag_bound, n)
    ph = rng.uniform(0, 2 * math.pi, n) + 1j * rng.uniform(-imag_bound, imag_bound, n)
    return [param_point(p, a, b) for a, b in zip(th, ph)]


def random_cylinder_points(rng, n, scale=5.0):
    w1 = _cplx(rng, n, scale)
    w3 = _cplx(rng, n, scale * scale)
    return [(a, a * a, b) for a, b in zip(w1, w3)]


def check_zero_set(n=64):
    worst = 0.0
    for R, r in TORUS_PARAMS:
        p = TorusParams(r=r, R=R)
        worst = max(worst, max(F.v_torus(p, z).value for z in sample_real_torus(p, n, n)))
    return worst <= 1e-12, f"max v on {n}x{n} real grids = {worst:.3e}"


def check_cross_formula(rng, n=1000):
    p = TorusParams(r=1.0, R=2.0)
    r = 10.0 * np.sqrt(rng.uniform(0, 1, (n, 2)))
    a = rng.uniform(0, 2 * math.pi, (n, 2))
    zs = r * np.exp(1j * a)
    gap = max(abs(F.v_K2_via_simplex(p, z) - F.v_K2_via_baran(p, z)) for z in zs)
    return gap <= 1e-10, f"max |simplex route - Baran route| = {gap:.3e} over {n} points"


def check_reflection(rng, n=500):
    p = TorusParams(r=1.0, R=2.0)
    worst = 0.0
    for a, b in zip(_cplx(rng, n, 5.0), _cplx(rng, n, 5.0)):
        worst = max(worst, abs(F.v_trapezoid(p, (a, b)).value - F.v_trapezoid(p, (a, -b)).value))
    return worst <= 1e-14, f"max trapezoid reflection gap = {worst:.3e}"


def check_sqrt_swap(rng, n=500):
    # swapping the square root of w3 exchanges the simplex coordinates
    p = TorusParams(r=1.0, R=2.0)
    worst = 0.0
    for w in random_cylinder_points(rng, n):
        q = F.sqrt_principal(w[2])
        a = F._cylinder_terms(p, w[0], q, 0.0).value
        b = F._cylinder_terms(p, w[0], -q, 0.0).value
        worst = max(worst, abs(a - b))
    return worst <= 1e-14, f"max sqrt(w3) branch swap gap = {worst:.3e}"


def check_fiber_constancy(rng, n=500):
    p = TorusParams(r=1.0, R=2.0)
    worst = 0.0
    for w in random_cylinder_points(rng, n):
        vals = [F.v_torus(p, z).value for z in psi_inverse(p, w)]
        worst = max(worst, max(vals) - min(vals))
    return worst <= 1e-11, f"max spread over psi fibres = {worst:.3e}"


def check_branch_invariance(rng, n=200):
    # the closed form must not care which preimage of psi(z) represents z
    p = TorusParams(r=1.0, R=2.0)
    worst = 0.0
    for z in random_variety_points(rng, p, n):
        v = F.v_torus(p, z).value
        for zz in psi_inverse(p, psi(p, z)):
            worst = max(worst, abs(F.v_torus(p, zz).value - v))
    return worst <= 1e-11, f"max gap across branches of psi = {worst:.3e}"


def check_rotation(rng, n=500):
    p = TorusParams(r=1.0, R=2.0)
    worst = 0.0
    for z, alpha in zip(random_variety_points(rng, p, n), rng.uniform(0, 2 * math.pi, n)):
        worst = max(worst, abs(F.v_torus(p, z).value - F.v_torus(p, rotate(z, alpha)).value))
    return worst <= 1e-9, f"max rotation gap = {worst:.3e}"


def check_growth(n=100):
    p = TorusParams(r=1.0, R=2.0)
    diffs = []
    for lam in np.linspace(3.0, 10.0, n):
        z = param_point(p, 1j * lam, 0)
        norm = math.sqrt(sum(abs(c) ** 2 for c in z))
        diffs.append(F.v_torus(p, z).value - math.log(norm))
    tv = float(np.sum(np.abs(np.diff(diffs))))
    ok = tv <= 1.0 and all(math.isfinite(d) for d in diffs)
    return ok, f"v - log|z| in [{min(diffs):.4f}, {max(diffs):.4f}], total variation {tv:.3e}"


def check_leaf_vieta(rng, n=300):
    p = TorusParams(r=1.0, R=2.0)
    worst_res, worst_root = 0.0, 0.0
    leaves = [LeafIndex(a, b) for a in (1, -1) for b in (1, -1)]
    for z1, z2 in zip(_cplx(rng, n, 4.0), _cplx(rng, n, 4.0)):
        pts = [leaf_point(p, z1, z2, leaf) for leaf in leaves]
        worst_res = max(worst_res, max(membership_residual(p, z) for z in pts))
        # the four z3 values are the four roots of the quartic: elementary symmetric functions
        z3 = np.array([z[2] for z in pts])
        coeffs = leaf_quartic(p, z1, z2)
        e1 = z3.sum()
        e2 = sum(z3[i] * z3[j] for i in range(4) for j in range(i + 1, 4))
        e4 = np.prod(z3)
        scale = 1.0 + abs(coeffs[2]) + abs(coeffs[4])
        err = max(abs(e1), abs(e2 - coeffs[2]), abs(e4 - coeffs[4])) / scale
        worst_root = max(worst_root, err)
    ok = worst_res <= 1e-10 and worst_root <= 1e-12
    return ok, f"max leaf residual {worst_res:.3e}, max Vieta defect {worst_root:.3e}"


def check_chebyshev_sandwich():
    # T_k = (h^k + h^-k) / 2, hence 0 <= gap <= (log 2 - log(1 - |h|^-2k)) / k
    worst_lo, worst_hi = math.inf, -math.inf
    for z in (2.0, 1 + 1j, 3j):
        v = F.v_interval(z)
        for k in (2, 4, 8, 16):
            gap = v - chebyshev_oracle(z, k)
            bound = (math.log(2) - math.log1p(-math.exp(-2 * k * v))) / k
            worst_lo = min(worst_lo, gap)
            worst_hi = max(worst_hi, gap - bound)
    ok = worst_lo >= 0.0 and worst_hi <= 1e-12
    return ok, f"min gap {worst_lo:.3e}, max excess over the Chebyshev bound {worst_hi:.3e}"


def check_lp_sandwich():
    cfg = OracleConfig(degree=8, polytope=total_degree(1))
    est = convergence_sweep(cfg, interval_samples(201), (2.0,), [2, 4, 8])
    gap_i = math.log(2 + math.sqrt(3)) - est[-1].lower_value
    mono = all(b.lower_value >= a.lower_value - 1e-8 for a, b in zip(est, est[1:]))
    cfg2 = OracleConfig(degree=4, polytope=total_degree(2))
    est2 = convergence_sweep(cfg2, simplex_samples(30), (0.5 + 0.5j, 0.2), [2, 4])
    v2 = F.v_simplex((0.5 + 0.5j, 0.2))
    gap_s = v2 - est2[-1].lower_value
    ok = -0.02 <= gap_i <= 0.15 and -0.02 <= gap_s <= 0.5 and mono
    return ok, f"interval gap {gap_i:.4f}, simplex gap {gap_s:.4f}, monotone {mono}"


def _suites(rng):
    return {
        "zero": [("zero-on-torus", check_zero_set)],
        "crossformula": [("cross-formula K2 agreement", lambda: check_cross_formula(rng))],
        "symmetry": [
            ("trapezoid reflection", lambda: check_reflection(rng)),
            ("cylinder sqrt swap", lambda: check_sqrt_swap(rng)),
            ("branch invariance", lambda: check_branch_invariance(rng)),
            ("fiber constancy", lambda: check_fiber_constancy(rng)),
            ("rotation invariance", lambda: check_rotation(rng)),
        ],
        "growth": [("growth", check_growth)],
        "leaves": [("leaf Vieta", lambda: check_leaf_vieta(rng))],
        "oracle": [
            ("Chebyshev sandwich", check_chebyshev_sandwich),
            ("LP sandwich", check_lp_sandwich),
        ],
    }


SUITES = ("all", "zero", "crossformula", "symmetry", "growth", "leaves", "oracle")


def run_suite(name="all", seed=0):
    """Run one suite (or all of them) and return the list of results."""
    if name not in SUITES:
        raise KeyError(name)
    rng = np.random.default_rng(seed)
    suites = _suites(rng)
    chosen = [s for s in suites if name in ("all", s)]
    results = []
    for s in chosen:
        for label, fn in suites[s]:
            t0 = time.perf_counter()
            ok, detail = fn()
            results.append(CheckResult(label, bool(ok), detail, time.perf_counter() - t0))
    return results
