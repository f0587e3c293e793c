"""Algebraic geometry of the complexified torus.

Points of C^3 are plain tuples of three complex numbers.  The torus variety is

    (z1^2 + z2^2 + z3^2 - (R^2 + r^2))^2 = 4 R^2 (r^2 - z3^2),

its real points form the usual ring torus, and the quadratic map ``psi``
sends it onto the parabolic cylinder ``w1^2 = w2``.
"""

import cmath
import itertools
import math
from dataclasses import dataclass

from .complex_kernel import sqrt_principal

#: |Im theta|, |Im phi| above this overflow cosh/sinh in double precision.
PARAM_IMAG_BOUND = 700.0

#: Scaled residual below which a point is accepted as lying on the variety.
ON_VARIETY_TOL = 1e-10


@dataclass(frozen=True)
class TorusParams:
    r: float
    R: float

    def __post_init__(self):
        r, R = float(self.r), float(self.R)
        if not (math.isfinite(r) and math.isfinite(R)) or not 0 < r < R:
            raise ValueError(f"torus radii must satisfy 0 < r < R < inf, got r={self.r}, R={self.R}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "R", R)


@dataclass(frozen=True)
class LeafIndex:
    """One of the four local inverses of ``(z1, z2, z3) -> (z1, z2)``.

    ``outer_sign`` picks the sign in front of ``2R sqrt(z1^2 + z2^2)``,
    ``z3_sign`` the sign of the final square root.
    """

    outer_sign: int = 1
    z3_sign: int = 1

    def __post_init__(self):
        if self.outer_sign not in (-1, 1) or self.z3_sign not in (-1, 1):
            raise ValueError(f"leaf signs must be +-1, got {self.outer_sign}, {self.z3_sign}")


def _norm4(z):
    return sum(abs(c) ** 2 for c in z) ** 2


def membership_residual(p, z):
    """Scaled residual of the defining quartic, ``|lhs - rhs| / (1 + |z|^4)``."""
    z1, z2, z3 = (complex(c) for c in z)
    R2, r2 = p.R * p.R, p.r * p.r
    lhs = (z1 * z1 + z2 * z2 + z3 * z3 - (R2 + r2)) ** 2
    rhs = 4.0 * R2 * (r2 - z3 * z3)
    return abs(lhs - rhs) / (1.0 + _norm4(z))


def membership_residual_alt(p, z):
    """Same quartic written as ``(|z|^2_C + R^2 - r^2)^2 = 4 R^2 (z1^2 + z2^2)``."""
    z1, z2, z3 = (complex(c) for c in z)
    R2, r2 = p.R * p.R, p.r * p.r
    s = z1 * z1 + z2 * z2
    lhs = (s + z3 * z3 + R2 - r2) ** 2
    rhs = 4.0 * R2 * s
    return abs(lhs - rhs) / (1.0 + _norm4(z))


def on_variety(p, z, tol=ON_VARIETY_TOL):
    return membership_residual(p, z) <= tol


def param_point(p, theta, phi):
    """``((R + r cos t) cos f, (R + r cos t) sin f, r sin t)`` for complex angles."""
    theta, phi = complex(theta), complex(phi)
    for name, a in (("theta", theta), ("phi", phi)):
        if not (math.isfinite(a.real) and math.isfinite(a.imag)):
            raise ValueError(f"{name} must be finite, got {a!r}")
        if abs(a.imag) > PARAM_IMAG_BOUND:
            raise OverflowError(f"|Im {name}| = {abs(a.imag)} exceeds {PARAM_IMAG_BOUND}")
    rho = p.R + p.r * cmath.cos(theta)
    return (rho * cmath.cos(phi), rho * cmath.sin(phi), p.r * cmath.sin(theta))


def sample_real_torus(p, n_theta, n_phi):
    """Equispaced real grid on the torus, theta-major, angles in [0, 2 pi)."""
    if n_theta < 1 or n_phi < 1:
        raise ValueError("sample counts must be positive")
    pts = []
    for i in range(n_theta):
        t = 2.0 * math.pi * i / n_theta
        rho = p.R + p.r * math.cos(t)
        z3 = p.r * math.sin(t)
        for j in range(n_phi):
            f = 2.0 * math.pi * j / n_phi
            pts.append((complex(rho * math.cos(f)), complex(rho * math.sin(f)), complex(z3)))
    return pts


def psi(p, z):
    """The quadratic map onto the parabolic cylinder."""
    z1, z2, z3 = (complex(c) for c in z)
    s = z1 * z1 + z2 * z2
    w1 = (s + z3 * z3 + p.R * p.R - p.r * p.r) / (2.0 * p.R)
    return (w1, s, z2 * z2)


def cylinder_residual(w):
    w1, w2, _ = (complex(c) for c in w)
    return abs(w1 * w1 - w2) / (1.0 + abs(w1) ** 2)


def psi_inverse(p, w):
    """The eight preimages under ``psi``, sign patterns in ``product((1, -1), repeat=3)`` order."""
    w1, w2, w3 = (complex(c) for c in w)
    a = sqrt_principal(w2 - w3)
    b = sqrt_principal(w3)
    c = sqrt_principal(2.0 * p.R * w1 - w2 + p.r * p.r - p.R * p.R)
    return [(s1 * a, s2 * b, s3 * c) for s1, s2, s3 in itertools.product((1, -1), repeat=3)]


def leaf_z3(p, z1, z2, leaf):
    """The ``z3`` coordinate of the torus point over ``(z1, z2)`` on the given leaf."""
    s = complex(z1) ** 2 + complex(z2) ** 2
    inner = p.r * p.r - p.R * p.R - s + leaf.outer_sign * 2.0 * p.R * sqrt_principal(s)
    return leaf.z3_sign * sqrt_principal(inner)


def leaf_point(p, z1, z2, leaf):
    return (complex(z1), complex(z2), leaf_z3(p, z1, z2, leaf))


def leaf_quartic(p, z1, z2):
    """Coefficients ``[1, 0, b, 0, c]`` of the quartic in ``z3`` over ``(z1, z2)``."""
    s = complex(z1) ** 2 + complex(z2) ** 2
    R2, r2 = p.R * p.R, p.r * p.r
    return [1.0, 0.0, 2.0 * (s + R2 - r2), 0.0, (s - R2 - r2) ** 2 - 4.0 * R2 * r2]


def phi_map(p, t):
    """``((t1 - R) / r, sqrt(t2))``, carrying the projected set onto the trapezoid."""
    t1, t2 = complex(t[0]), complex(t[1])
    return ((t1 - p.R) / p.r, sqrt_principal(t2))


def project(w):
    """Coordinate projection ``(w1, w2, w3) -> (w1, w3)`` of the cylinder."""
    return (complex(w[0]), complex(w[2]))


def rotate(z, alpha):
    """Rotation by a real angle in the ``(z1, z2)`` plane; the torus is invariant."""
    c, s = math.cos(alpha), math.sin(alpha)
    z1, z2, z3 = z
    return (z1 * c - z2 * s, z1 * s + z2 * c, z3)
