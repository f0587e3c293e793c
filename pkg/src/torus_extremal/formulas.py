"""Closed-form extremal functions along the derivation chain.

interval [-1, 1] -> simplex -> triangle K2 (two routes) -> trapezoid K
-> projected set (Sigma_{2,1} degree) -> cylinder -> torus.

Every value is ``log h(x)`` for a real argument ``x >= 1``.  The arguments are
built from moduli, so their rounding noise is estimated alongside and
arguments within that noise of 1 are resolved to 1 (see
:func:`complex_kernel.log_h_real`).
"""

import enum
import sys
from dataclasses import dataclass

from .complex_kernel import log_h_real, sqrt_principal
from .geometry import TrapezoidData
from .variety import cylinder_residual, membership_residual, phi_map, psi

EPS = sys.float_info.epsilon

#: Largest scaled residual accepted at the public API boundary.
API_RESIDUAL_TOL = 1e-8


class Branch(enum.Enum):
    INTERVAL_TERM = "INTERVAL_TERM"
    SIMPLEX_TERM = "SIMPLEX_TERM"


@dataclass(frozen=True)
class EvalResult:
    value: float
    active_branch: Branch
    h_argument: float


class OffVarietyError(ValueError):
    """The point is not on the torus variety (or the cylinder) within tolerance."""

    def __init__(self, residual, tol=API_RESIDUAL_TOL, what="torus variety"):
        super().__init__(f"point is off the {what}: residual {residual:.3e} > {tol:.0e}")
        self.residual = residual


def _interval_term(c, noise_c=0.0):
    x = (abs(c + 1.0) + abs(c - 1.0)) / 2.0
    return log_h_real(x, noise_c + EPS * (1.0 + abs(c)))


def _simplex_term(s1, s2, noise_s=0.0):
    x = abs(s1) + abs(s2) + abs(s1 + s2 - 1.0)
    return log_h_real(x, 3.0 * noise_s + 2.0 * EPS * (1.0 + abs(s1) + abs(s2)))


def _pick(interval, simplex):
    # ties go to the simplex term
    if interval[1] > simplex[1]:
        return EvalResult(interval[1], Branch.INTERVAL_TERM, interval[0])
    return EvalResult(simplex[1], Branch.SIMPLEX_TERM, simplex[0])


def v_interval(zeta):
    """Extremal function of ``[-1, 1]`` in C: ``log h((|z + 1| + |z - 1|) / 2)``."""
    return _interval_term(complex(zeta))[1]


def v_simplex(s):
    """Extremal function of the standard simplex in C^2."""
    return _simplex_term(complex(s[0]), complex(s[1]))[1]


def _k2_noise(p, zeta):
    return 2.0 * EPS * (p.r * (abs(zeta[0]) + p.R / p.r) + abs(zeta[1])) / (2.0 * (p.R + p.r))


def _k2_simplex(p, zeta):
    zeta = (complex(zeta[0]), complex(zeta[1]))
    s1, s2 = TrapezoidData(p.r, p.R).apply_L(zeta)
    return _simplex_term(s1, s2, _k2_noise(p, zeta))


def v_K2_via_simplex(p, zeta):
    """Extremal function of the triangle ``K2`` pulled back from the simplex."""
    return _k2_simplex(p, zeta)[1]


def v_K2_via_baran(p, zeta):
    """Extremal function of ``K2`` from the shifted three-direction Baran form."""
    data = TrapezoidData(p.r, p.R)
    zeta = (complex(zeta[0]), complex(zeta[1]))
    shifted = (zeta[0] + data.shift[0], zeta[1] + data.shift[1])
    dots = [y[0] * shifted[0] + y[1] * shifted[1] for y in data.y]
    best = max(
        sum(a * abs(d) for a, d in zip(row, dots[:2])) + abs(dots[k] - 1.0)
        for k, row in enumerate(data.A)
    )
    return log_h_real(best, 6.0 * _k2_noise(p, zeta) + 2.0 * EPS * (1.0 + sum(abs(d) for d in dots)))[1]


def v_trapezoid(p, zeta):
    """Extremal function of the trapezoid ``K``: the larger of the strip and triangle terms."""
    zeta = (complex(zeta[0]), complex(zeta[1]))
    return _pick(_interval_term(zeta[0]), _k2_simplex(p, zeta))


def v_piE(p, t):
    """Sigma_{2,1}-extremal function of the projected set, ``2 V_K(Phi(t))``."""
    return 2.0 * v_trapezoid(p, phi_map(p, t)).value


def _cylinder_terms(p, w1, q, noise_w1):
    # q is a square root of w3; its sign only swaps the simplex coordinates
    c = (w1 - p.R) / p.r
    noise_c = (noise_w1 + 2.0 * EPS * (abs(w1) + p.R)) / p.r
    scale = 2.0 * (p.R + p.r)
    s1, s2 = (w1 + q) / scale, (w1 - q) / scale
    noise_s = (noise_w1 + 4.0 * EPS * (abs(w1) + abs(q))) / scale
    return _pick(_interval_term(c, noise_c), _simplex_term(s1, s2, noise_s))


def v_cylinder(p, w):
    """Extremal function of the compact set ``E`` on the parabolic cylinder."""
    res = cylinder_residual(w)
    if res > API_RESIDUAL_TOL:
        raise OffVarietyError(res, what="parabolic cylinder")
    w1, w3 = complex(w[0]), complex(w[2])
    return 2.0 * _cylinder_terms(p, w1, sqrt_principal(w3), 0.0).value


def v_torus(p, z):
    """Extremal function of the real torus in its complexification.

    The ambiguous square roots of the closed formula are evaluated through
    ``w1 = psi_1(z)``, a polynomial: ``sqrt(1 - (z3/r)^2) -> (w1 - R)/r`` and
    ``sqrt(z1^2 + z2^2) -> w1``.  This makes the value constant on the fibres
    of ``psi``.
    """
    z = tuple(complex(c) for c in z)
    res = membership_residual(p, z)
    if res > API_RESIDUAL_TOL:
        raise OffVarietyError(res)
    w1, _, w3 = psi(p, z)
    noise_w1 = 2.0 * EPS * (sum(abs(c) ** 2 for c in z) + p.R * p.R + p.r * p.r) / (2.0 * p.R)
    return _cylinder_terms(p, w1, sqrt_principal(w3), noise_w1)
