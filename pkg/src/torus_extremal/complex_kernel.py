"""Branch-disciplined complex scalar primitives.

Every square root in the package goes through :func:`sqrt_principal`, so the
leaf functions and the extremal formulas are deterministic functions of their
inputs.  :func:`joukowski_inverse` always returns the preimage outside the
closed unit disk, which makes ``log|h|`` the Green function of ``[-1, 1]``.
"""

import cmath
import math


class KernelDomainError(ValueError):
    """Raised when a non-finite value enters a kernel operation."""


def _check_finite(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise KernelDomainError(f"non-finite complex input: {z!r}")
    return z


def sqrt_principal(z):
    """Principal square root with the cut on the negative real axis.

    The result has ``Re >= 0``; on the cut (``Re == 0``) the root with
    ``Im >= 0`` is returned, so ``sqrt_principal(-1) == 1j`` regardless of the
    sign of a zero imaginary part.
    """
    z = _check_finite(z)
    # -0.0 + 0.0 == +0.0: fold the signed zero so the cut is approached from above
    z = complex(z.real, z.imag + 0.0)
    return cmath.sqrt(z)


def joukowski_inverse(z):
    """Inverse Joukowski map ``h`` with ``h + 1/h = 2z`` and ``|h| >= 1``.

    The two candidates ``z +- sqrt(z^2 - 1)`` are reciprocal.  The one of
    larger modulus is formed directly (no cancellation); on ``[-1, 1]`` both are
    unimodular and ``z + sqrt_principal(z^2 - 1)`` is returned.
    """
    z = _check_finite(z)
    s = sqrt_principal((z - 1.0) * (z + 1.0))
    # |z + s| >= |z - s|  <=>  Re(z * conj(s)) >= 0
    if z.real * s.real + z.imag * s.imag >= 0.0:
        return z + s
    return z - s


def log_h(z):
    """``log|h(z)|`` for the inverse Joukowski map; nonnegative, 0 on [-1, 1]."""
    h = joukowski_inverse(z)
    return max(0.0, math.log(abs(h)))


def log_h_real(x, noise=0.0):
    """``log h(x)`` for a real argument that is mathematically ``>= 1``.

    The Green function grows like ``sqrt(2(x - 1))`` above 1, so rounding noise
    of size ``noise`` in ``x`` would surface as ``sqrt(noise)`` in the result.
    Arguments within ``16 * noise`` of 1 are therefore resolved to exactly 1.
    Returns ``(argument, value)`` with the (possibly snapped) argument.
    """
    x = float(x)
    if not math.isfinite(x):
        raise KernelDomainError(f"non-finite real input: {x!r}")
    if x - 1.0 <= 16.0 * noise:
        return 1.0, 0.0
    return x, log_h(x)
