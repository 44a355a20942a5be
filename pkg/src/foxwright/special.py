"""Complex gamma-family kernels.

Thin wrappers over mpmath evaluated at a fixed working precision well above
double, rounded back to Python ``complex``. Every routine is pure.
"""
from __future__ import annotations

import mpmath

from .errors import PoleError

POLE_TOL = 1e-12

# private context: the global mpmath context is shared mutable state
_ctx = mpmath.MPContext()
_ctx.dps = 30


def _check_pole(z: complex) -> None:
    if abs(z.imag) < POLE_TOL and z.real < POLE_TOL:
        k = round(z.real)
        if abs(z.real - k) < POLE_TOL:
            raise PoleError(f"gamma pole at z={z!r}")


def log_gamma(z) -> complex:
    """Principal branch of log Gamma(z) (branch cut on (-inf, 0])."""
    z = complex(z)
    _check_pole(z)
    return complex(_ctx.loggamma(_ctx.mpc(z.real, z.imag)))


def gamma(z) -> complex:
    z = complex(z)
    _check_pole(z)
    return complex(_ctx.gamma(_ctx.mpc(z.real, z.imag)))


def rgamma(z) -> complex:
    """1/Gamma(z); entire, zero at the poles of Gamma."""
    z = complex(z)
    return complex(_ctx.rgamma(_ctx.mpc(z.real, z.imag)))


def digamma(z) -> complex:
    z = complex(z)
    _check_pole(z)
    return complex(_ctx.digamma(_ctx.mpc(z.real, z.imag)))


def rising_factorial(a, n: int):
    """Pochhammer symbol (a)_n as an explicit product.

    Integer and real inputs stay in their own type, so small integer
    cases are exact.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    out = 1
    for j in range(n):
        out = out * (a + j)
    return out
