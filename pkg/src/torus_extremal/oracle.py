"""Siciak envelope estimates by linear programming.

For a degree ``k`` and a sampled compact set ``K`` we maximise ``|p(z)|`` over
``p`` in the span of ``{z^alpha : alpha in kP}`` subject to ``|p| <= 1`` on the
samples.  The modulus constraint is replaced by ``m`` half-planes
``Re(e^{i theta_j} p(x)) <= 1`` (an inscribed-polygon relaxation from
outside), so ``|p| <= 1/cos(pi/m)`` on the samples and the deflated
polynomial ``cos(pi/m) p`` is admissible.  ``(1/k) log`` of its value at ``z``
is a lower estimate of the extremal function, up to the slack caused by
sampling ``K``.
"""

import json
import logging
import math
import time
from dataclasses import dataclass, field, replace

import highspy
import numpy as np

from .geometry import DegreePolytope, monomial_exponents, simplex

log = logging.getLogger(__name__)

MAX_BASIS_SIZE = 2000
#: singular values below this fraction of the largest are treated as zero on K
RANK_RTOL = 1e-10
#: relative weight of z's monomial vector outside the sample-determined space
UNDETERMINED_RTOL = 1e-7


class OracleError(RuntimeError):
    code = "ORACLE_ERROR"


class OracleUnbounded(OracleError):
    """The samples do not pin down polynomials at ``z``; densify them."""

    code = "ORACLE_UNBOUNDED"


class OracleSolverError(OracleError):
    code = "ORACLE_SOLVER"


@dataclass(frozen=True)
class OracleConfig:
    degree: int
    polytope: DegreePolytope
    directions: int = 32
    objective_directions: int = 16
    lp_tolerance: float = 1e-9
    samples: tuple = ()
    max_rounds: int = 200

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be a positive integer")
        if self.directions < 8:
            raise ValueError("need at least 8 polygon directions")
        if self.objective_directions < 1:
            raise ValueError("need at least one objective direction")
        size = len(monomial_exponents(self.polytope, self.degree))
        if size > MAX_BASIS_SIZE:
            raise ValueError(f"basis size {size} exceeds the cap {MAX_BASIS_SIZE}")


@dataclass
class OracleEstimate:
    lower_value: float
    raw_value: float
    degree: int
    basis_size: int
    rank: int = 0
    solver_iterations: int = 0
    wall_time_ms: float = 0.0
    sample_max_modulus: float = field(default=float("nan"), repr=False)

    def to_dict(self):
        return {
            "degree": self.degree,
            "basis_size": self.basis_size,
            "raw_value": self.raw_value,
            "lower_value": self.lower_value,
            "solver_iterations": self.solver_iterations,
            "wall_time_ms": self.wall_time_ms,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def _is_down_closed(exps):
    s = set(exps)
    for a in exps:
        for i, ai in enumerate(a):
            if ai and a[:i] + (ai - 1,) + a[i + 1:] not in s:
                return False
    return True


def _coordinate_maps(X, shift):
    if shift:
        lo = X.real.min(axis=0) + 1j * X.imag.min(axis=0)
        hi = X.real.max(axis=0) + 1j * X.imag.max(axis=0)
        center = (lo + hi) / 2
    else:
        center = np.zeros(X.shape[1], dtype=complex)
    half = np.abs(X - center).max(axis=0)
    # a coordinate whose spread is rounding noise carries no information;
    # rescaling it up to O(1) would fake a full-rank sample matrix
    scale = max(1.0, float(np.abs(X).max()))
    half[half <= 1e-6 * scale] = scale
    return center, half


def _basis_matrix(X, exps, center, half, chebyshev):
    """Rows: points, columns: basis functions indexed like ``exps``."""
    U = (X - center) / half
    top = np.max(np.asarray(exps), axis=0)
    per_coord = []
    for i in range(X.shape[1]):
        cols = [np.ones(len(U), dtype=complex)]
        if top[i] >= 1:
            cols.append(U[:, i].astype(complex))
        for a in range(2, top[i] + 1):
            cols.append(2 * U[:, i] * cols[-1] - cols[-2] if chebyshev else U[:, i] * cols[-1])
        per_coord.append(cols)
    M = np.empty((len(U), len(exps)), dtype=complex)
    for j, a in enumerate(exps):
        col = per_coord[0][a[0]].copy()
        for i in range(1, X.shape[1]):
            col *= per_coord[i][a[i]]
        M[:, j] = col
    return M


def _solve_direction(P_all, obj, rot, tol, max_rounds):
    """Maximise ``Re(obj . u)`` subject to ``Re(rot_j (P_all u)_i) <= 1``.

    Rows are generated lazily: the model starts from four directions per
    sample and, after each warm-started HiGHS solve, receives the three
    polygon directions around the phase of ``p`` at every violated sample.
    The returned point satisfies every row to within ``tol`` and is scaled
    back onto the feasible set.
    """
    N, r = P_all.shape
    m = len(rot)
    inf = highspy.kHighsInf
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("primal_feasibility_tolerance", tol)
    h.setOptionValue("dual_feasibility_tolerance", tol)
    empty_i = np.array([], dtype=np.int32)
    h.addCols(2 * r, np.concatenate([obj.real, -obj.imag]), np.full(2 * r, -inf),
              np.full(2 * r, inf), 0, empty_i, empty_i, np.array([]))
    h.changeObjectiveSense(highspy.ObjSense.kMaximize)
    active = np.zeros((N, m), dtype=bool)
    cols = np.arange(2 * r, dtype=np.int32)

    def add_rows(ii, jj):
        sub = rot[jj][:, None] * P_all[ii]
        A = np.ascontiguousarray(np.concatenate([sub.real, -sub.imag], axis=1))
        n = len(A)
        h.addRows(n, np.full(n, -inf), np.ones(n), A.size,
                  np.arange(0, A.size, 2 * r, dtype=np.int32), np.tile(cols, n), A.ravel())
        active[ii, jj] = True

    quarter = sorted({int(round(q * m / 4)) % m for q in range(4)})
    ii, jj = np.meshgrid(np.arange(N), quarter, indexing="ij")
    add_rows(ii.ravel(), jj.ravel())
    iters = 0
    for _ in range(max_rounds):
        run_status = h.run()
        status = h.getModelStatus()
        if run_status == highspy.HighsStatus.kError:
            raise OracleSolverError(f"HiGHS failed ({h.modelStatusToString(status)}) after {h.getNumRow()} rows")
        iters += int(h.getInfo().simplex_iteration_count)
        if status == highspy.HighsModelStatus.kUnbounded:
            raise OracleUnbounded("linear program is unbounded: densify the samples of K")
        if status == highspy.HighsModelStatus.kInfeasible:
            raise OracleError("linear program reported infeasible although p = 0 is feasible")
        if status != highspy.HighsModelStatus.kOptimal:
            raise OracleSolverError(f"HiGHS stopped with status {h.modelStatusToString(status)}")
        x = np.asarray(h.getSolution().col_value)
        u = x[:r] + 1j * x[r:]
        vals = (rot[None, :] * (P_all @ u)[:, None]).real
        if vals.max() <= 1.0 + tol:
            break
        bad = np.nonzero(vals.max(axis=1) > 1.0 + tol)[0]
        jstar = np.argmax(vals[bad], axis=1)
        new_i, new_j = [], []
        for off in (-1, 0, 1):
            j = (jstar + off) % m
            fresh = ~active[bad, j]
            new_i.append(bad[fresh])
            new_j.append(j[fresh])
        new_i, new_j = np.concatenate(new_i), np.concatenate(new_j)
        if len(new_i) == 0:
            break
        add_rows(new_i, new_j)
    else:
        raise OracleSolverError(f"row generation did not settle in {max_rounds} rounds")
    u = u / max(1.0, float(vals.max()))
    return float((obj @ u).real), u, iters


def lp_envelope(cfg, samples, z, basis_scale=None):
    """Lower estimate of the extremal function of the sampled set at ``z``."""
    t0 = time.perf_counter()
    X = np.asarray([[complex(c) for c in x] for x in samples], dtype=complex)
    if X.size == 0:
        raise ValueError("K_samples must be nonempty")
    if X.ndim != 2 or X.shape[1] != cfg.polytope.dimension:
        raise ValueError("sample dimension does not match the polytope")
    zv = np.asarray([[complex(c) for c in z]], dtype=complex)
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(zv))):
        raise ValueError("samples and z must be finite")

    exps = monomial_exponents(cfg.polytope, cfg.degree)
    cheb = _is_down_closed(exps)
    center, half = _coordinate_maps(X, shift=cheb)
    M = _basis_matrix(X, exps, center, half, cheb)
    mz = _basis_matrix(zv, exps, center, half, cheb)[0]
    if basis_scale is not None:
        basis_scale = np.asarray(basis_scale, dtype=complex)
        M = M * basis_scale
        mz = mz * basis_scale

    U, S, Vh = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(S > RANK_RTOL * S[0]))
    g = Vh.conj() @ mz  # coordinates of mz along the right singular vectors
    # Vh may have fewer rows than the basis when samples are scarce, so measure
    # what the sample-determined directions miss directly
    outside = np.linalg.norm(mz - Vh[:rank].T @ g[:rank])
    if outside > UNDETERMINED_RTOL * np.linalg.norm(mz):
        raise OracleUnbounded(
            f"samples determine only {rank} of {len(exps)} basis directions and z "
            "sees the rest: densify the samples of K"
        )
    P_all = U[:, :rank]
    obj_base = g[:rank] / S[:rank]

    m, m0 = cfg.directions, cfg.objective_directions
    rot = np.exp(2j * np.pi * np.arange(m) / m)
    # the feasible set is invariant under u -> e^{2 pi i / m} u, so objective
    # angles only matter modulo 2 pi / m
    residues = sorted({(j * m) % m0 for j in range(m0)})
    best, best_u, iters = -np.inf, None, 0
    # the optimiser is indifferent to the objective's scale; keep it O(1) for HiGHS
    obj_norm = float(np.linalg.norm(obj_base))
    for res_num in residues:
        theta0 = 2 * np.pi * res_num / (m0 * m)
        val, u, it = _solve_direction(
            P_all, np.exp(1j * theta0) * obj_base / obj_norm, rot, cfg.lp_tolerance, cfg.max_rounds
        )
        iters += it
        if val * obj_norm > best:
            best, best_u = val * obj_norm, u
    if best <= 0:
        raise OracleError(f"nonpositive optimum {best}")
    deflate = math.cos(math.pi / m)
    raw = math.log(best) / cfg.degree
    lower = raw + math.log(deflate) / cfg.degree
    est = OracleEstimate(
        lower_value=lower,
        raw_value=raw,
        degree=cfg.degree,
        basis_size=len(exps),
        rank=rank,
        solver_iterations=iters,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
        sample_max_modulus=float(deflate * np.abs(P_all @ best_u).max()),
    )
    log.debug("lp_envelope k=%d basis=%d rank=%d -> %.6f", cfg.degree, len(exps), rank, lower)
    return est


def convergence_sweep(cfg, samples, z, degrees):
    """Run :func:`lp_envelope` for each degree in an ascending list."""
    degrees = list(degrees)
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degrees must be strictly ascending")
    return [lp_envelope(replace(cfg, degree=k), samples, z) for k in degrees]


def chebyshev_oracle(z, k):
    """``(1/k) log|T_k(z)|``, the exact degree-k Siciak quantity for [-1, 1]."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    z = complex(z)
    t_prev, t = 1.0 + 0j, z
    for _ in range(k - 1):
        t_prev, t = t, 2 * z * t - t_prev
    return math.log(abs(t)) / k if t != 0 else -math.inf


# -- sampled compact sets used by the cross-checks -------------------------

def interval_samples(n=201):
    return [(complex(-1.0 + 2.0 * i / (n - 1)),) for i in range(n)]


def simplex_samples(n=40):
    """Triangular grid ``(i/n, j/n)``, ``i + j <= n``: boundary and interior."""
    return [(complex(i / n), complex(j / n)) for i in range(n + 1) for j in range(n + 1 - i)]


def trapezoid_samples(p, n1=30, n2=30):
    pts = []
    for i in range(n1 + 1):
        x1 = -1.0 + 2.0 * i / n1
        top = p.r * x1 + p.R
        for j in range(n2 + 1):
            pts.append((complex(x1), complex(-top + 2.0 * top * j / n2)))
    return pts


def projected_set_samples(p, n1=30, n2=30):
    """Grid on ``{R - r <= t1 <= R + r, 0 <= t2 <= t1^2}``, the projected set in ``(w1, w3)``."""
    pts = []
    for i in range(n1 + 1):
        t1 = p.R - p.r + 2.0 * p.r * i / n1
        for j in range(n2 + 1):
            pts.append((complex(t1), complex(t1 * t1 * j / n2)))
    return pts


def total_degree(n):
    return simplex(n)
