"""Convex polytopes as degree generators, symmetric bodies, and the fixed
affine data (trapezoid, simplex map, shift) used by the extremal formulas."""

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complex_kernel import log_h


@dataclass(frozen=True)
class DegreePolytope:
    """Convex polytope ``P`` in the nonnegative orthant, stored by vertices.

    ``inequalities`` optionally carries an exact H-representation as rows
    ``(a, b)`` meaning ``<a, x> <= b`` with rational entries; when absent it is
    derived from the vertices.
    """

    dimension: int
    vertices: tuple
    name: str = ""
    inequalities: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(tuple(float(c) for c in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        for v in verts:
            if len(v) != self.dimension:
                raise ValueError(f"vertex {v} does not have dimension {self.dimension}")
            if any(c < 0 or not math.isfinite(c) for c in v):
                raise ValueError(f"vertex {v} is not in the nonnegative orthant")
        if not any(all(c == 0 for c in v) for v in verts):
            raise ValueError("the origin must be a vertex of a degree polytope")
        for i in range(self.dimension):
            if not any(v[i] > 0 for v in verts):
                raise ValueError(f"no vertex reaches along coordinate {i}")
        if self.inequalities is None:
            object.__setattr__(self, "inequalities", _facets_from_vertices(verts))

    def contains(self, x, tol=0.0):
        """Membership test against the H-representation."""
        exact = all(isinstance(c, (int, Fraction)) for c in x)
        for a, b in self.inequalities:
            lhs = sum(ai * xi for ai, xi in zip(a, x))
            if exact:
                if lhs > b:
                    return False
            elif float(lhs) > float(b) + tol:
                return False
        return True


def _facets_from_vertices(verts):
    """Facet inequalities of conv(verts) by brute force over vertex subsets.

    Each candidate hyperplane passes through ``n`` affinely independent points
    and is kept when every vertex lies on one side.  Meant for the handful of
    vertices a degree polytope has.
    """
    pts = np.asarray(verts, dtype=float)
    n = pts.shape[1]
    scale = max(1.0, float(np.abs(pts).max()))
    tol = 1e-12 * scale
    if n == 1:
        return (((1.0,), float(pts.max())), ((-1.0,), -float(pts.min())))
    rows = []
    for combo in itertools.combinations(range(len(pts)), n):
        base = pts[list(combo)]
        diffs = base[1:] - base[0]
        # normal = null vector of the n-1 difference rows
        _, sing, vt = np.linalg.svd(diffs)
        if len(sing) == n - 1 and sing[-1] <= tol:
            continue
        normal = vt[-1]
        offset = float(normal @ base[0])
        side = pts @ normal - offset
        if np.all(side <= tol):
            rows.append((normal, offset))
        elif np.all(side >= -tol):
            rows.append((-normal, -offset))
    unique = []
    for a, b in rows:
        norm = np.linalg.norm(a)
        a, b = a / norm, b / norm
        if not any(np.allclose(a, a2, atol=1e-12) and abs(b - b2) <= tol for a2, b2 in unique):
            unique.append((a, b))
    return tuple((tuple(float(c) for c in a), float(b)) for a, b in unique)


def simplex(n):
    """Standard unit simplex ``{y >= 0 : |y|_1 <= 1}`` (total degree)."""
    verts = [(0,) * n] + [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    ineqs = [(tuple(-1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    ineqs.append(((1,) * n, 1))
    return DegreePolytope(n, verts, name=f"simplex{n}", inequalities=tuple(ineqs))


def sigma_21():
    """The polytope ``{y >= 0 : y1/2 + y2 <= 1}`` in the plane."""
    ineqs = (((-1, 0), 0), ((0, -1), 0), ((Fraction(1, 2), 1), 1))
    return DegreePolytope(2, [(0, 0), (2, 0), (0, 1)], name="sigma21", inequalities=ineqs)


def support_function(P, x):
    """``max_{v in vertices} <x, v>``, the support function of ``P`` at ``x``."""
    if len(x) != P.dimension:
        raise ValueError(f"point of dimension {len(x)} for polytope of dimension {P.dimension}")
    return max(sum(xi * vi for xi, vi in zip(x, v)) for v in P.vertices)


def log_support(P, z):
    """Logarithmic support function ``phi_P(log|z_1|, ..., log|z_n|)``.

    A zero coordinate contributes ``-inf`` only through vertices that use it
    (``0 * -inf = 0``); the result may be ``-inf``.
    """
    if len(z) != P.dimension:
        raise ValueError(f"point of dimension {len(z)} for polytope of dimension {P.dimension}")
    logs = [math.log(abs(zi)) if zi != 0 else -math.inf for zi in z]
    best = -math.inf
    for v in P.vertices:
        total = 0.0
        for vi, li in zip(v, logs):
            if vi != 0:
                total += vi * li
        best = max(best, total)
    return best


def monomial_exponents(P, k):
    """All ``alpha`` in ``N^n`` with ``alpha in kP``, in ascending lexicographic order."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    bounds = [int(math.floor(k * max(v[i] for v in P.vertices) + 1e-9)) for i in range(P.dimension)]
    exact = all(
        isinstance(b, (int, Fraction)) and all(isinstance(c, (int, Fraction)) for c in a)
        for a, b in P.inequalities
    )
    slack = 0 if exact else 1e-9 * max(1, k)
    out = []
    for alpha in itertools.product(*(range(b + 1) for b in bounds)):
        if all(sum(ai * xi for ai, xi in zip(a, alpha)) <= k * b + slack for a, b in P.inequalities):
            out.append(alpha)
    return out


@dataclass(frozen=True)
class SymmetricBodySpec:
    """Finite set of extreme points of the polar ``K*`` of a symmetric body.

    The point list is closed under negation at construction, which is what
    central symmetry of ``K`` means for its polar.
    """

    dimension: int
    polar_extremal_points: tuple

    def __post_init__(self):
        pts = []
        for y in self.polar_extremal_points:
            y = tuple(float(c) for c in y)
            if len(y) != self.dimension:
                raise ValueError(f"point {y} does not have dimension {self.dimension}")
            for cand in (y, tuple(-c + 0.0 for c in y)):
                if cand not in pts:
                    pts.append(cand)
        if not pts:
            raise ValueError("the polar point list is empty")
        object.__setattr__(self, "polar_extremal_points", tuple(pts))


def baran_symmetric(B, z):
    """Baran's formula: ``max_y log|h(<z, y>)|`` with the bilinear pairing."""
    if len(z) != B.dimension:
        raise ValueError(f"point of dimension {len(z)} for body of dimension {B.dimension}")
    return max(log_h(sum(zi * yi for zi, yi in zip(z, y))) for y in B.polar_extremal_points)


def cube_body(n):
    """Polar data of the cube ``[-1, 1]^n``: the cross-polytope vertices."""
    return SymmetricBodySpec(n, [tuple(1.0 if j == i else 0.0 for j in range(n)) for i in range(n)])


def polytope_from_json(text):
    doc = json.loads(text) if isinstance(text, str) else text
    return DegreePolytope(int(doc["dimension"]), doc["vertices"], name=doc.get("name", ""))


def body_from_json(text):
    doc = json.loads(text) if isinstance(text, str) else text
    return SymmetricBodySpec(int(doc["dimension"]), doc["vertices"])


def polytope_to_json(P):
    return json.dumps({"dimension": P.dimension, "vertices": [list(v) for v in P.vertices]})


@dataclass(frozen=True)
class TrapezoidData:
    """Affine data attached to the torus radii.

    ``K = {|x1| <= 1, |x2| <= r x1 + R}`` is cut into the strip over
    ``K1 = [-1, 1]`` and the triangle
    ``K2 = {-R/r <= x1 <= 1, |x2| <= r x1 + R}``; ``L`` maps ``K2 + shift``
    onto the standard simplex.
    """

    r: float
    R: float

    def __post_init__(self):
        if not (0 < self.r < self.R) or not math.isfinite(self.R):
            raise ValueError(f"need 0 < r < R < inf, got r={self.r}, R={self.R}")

    @property
    def shift(self):
        return (self.R / self.r, 0.0)

    @property
    def L(self):
        c = 1.0 / (2.0 * (self.R + self.r))
        return ((self.r * c, c), (self.r * c, -c))

    @property
    def y(self):
        """The three directions ``y1, y2, y3 = y1 + y2`` of the modified Baran formula."""
        (a, b), (c, d) = self.L
        return ((a, b), (c, d), (a + c, b + d))

    A = ((1, 0), (0, 1), (1, 1))

    @property
    def k2_vertices(self):
        R, r = self.R, self.r
        return ((-R / r, 0.0), (1.0, R + r), (1.0, -(R + r)))

    @property
    def k_vertices(self):
        R, r = self.R, self.r
        return ((-1.0, R - r), (1.0, R + r), (1.0, -(R + r)), (-1.0, -(R - r)))

    def apply_L(self, zeta):
        """``L (zeta + shift)`` for a complex 2-vector."""
        (a, b), (c, d) = self.L
        u = zeta[0] + self.R / self.r
        v = zeta[1]
        return (a * u + b * v, c * u + d * v)

    def in_k2(self, x, tol=0.0):
        x1, x2 = x
        return -self.R / self.r - tol <= x1 <= 1 + tol and abs(x2) <= self.r * x1 + self.R + tol

    def in_k(self, x, tol=0.0):
        x1, x2 = x
        return -1 - tol <= x1 <= 1 + tol and abs(x2) <= self.r * x1 + self.R + tol
