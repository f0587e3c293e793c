"""Extremal plurisubharmonic function of the real torus in its complexification."""

from .complex_kernel import KernelDomainError, joukowski_inverse, log_h, sqrt_principal
from .formulas import (
    Branch,
    EvalResult,
    OffVarietyError,
    v_cylinder,
    v_interval,
    v_K2_via_baran,
    v_K2_via_simplex,
    v_piE,
    v_simplex,
    v_torus,
    v_trapezoid,
)
from .geometry import (
    DegreePolytope,
    SymmetricBodySpec,
    TrapezoidData,
    baran_symmetric,
    log_support,
    monomial_exponents,
    sigma_21,
    simplex,
    support_function,
)
from .grids import Chart, GridResult, GridSpec, evaluate_grid, read_json, render_svg, write_csv, write_json
from .oracle import (
    OracleConfig,
    OracleEstimate,
    OracleUnbounded,
    chebyshev_oracle,
    convergence_sweep,
    lp_envelope,
)
from .variety import (
    LeafIndex,
    TorusParams,
    leaf_point,
    leaf_z3,
    membership_residual,
    param_point,
    psi,
    psi_inverse,
    sample_real_torus,
)

__version__ = "0.1.0"
