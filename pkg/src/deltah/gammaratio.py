"""The gamma ratio W(s) = prod Gamma(A_k s + a_k) / prod Gamma(B_j s + b_j)
and its large-argument expansion.

All gamma evaluation goes through :mod:`deltah.backend` so the hot paths can
run in the compiled kernel.  Everything is assembled in log space; values are
exponentiated only at the end, which keeps large weight vectors from
overflowing intermediates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DomainError, PoleError
from .params import ParameterSet, derive, validate

#: sector guard for the asymptotic series, |arg z| < pi - SECTOR_DELTA
SECTOR_DELTA = 0.1


def _pole_at(scale, shift, s) -> bool:
    """True if some scale*s + shift sits on a non-positive integer (real s only)."""
    if abs(complex(s).imag) > 1e-13:
        return False
    x = complex(s).real
    for w, sh in zip(scale, shift):
        arg = w * x + sh
        if arg <= 1e-12 and abs(arg - round(arg)) < 1e-12:
            return True
    return False


def log_gamma(z):
    """Principal-branch log Gamma for complex scalar or array input.

    Raises :class:`PoleError` at non-positive integers.
    """
    out = backend.loggamma(np.asarray(z, dtype=complex))
    if np.any(np.isnan(np.atleast_1d(out))):
        raise PoleError("log_gamma pole at a non-positive integer")
    return out if np.ndim(z) else complex(out)


def digamma(z):
    """Digamma psi(z) for complex scalar or array input."""
    out = backend.digamma(np.asarray(z, dtype=complex))
    if np.any(np.isnan(np.atleast_1d(out))):
        raise PoleError("digamma pole at a non-positive integer")
    return out if np.ndim(z) else complex(out)


def log_W(params: ParameterSet, s):
    """log of the gamma ratio at complex s (scalar or array), no pole checks."""
    return backend.log_gamma_ratio(params.A, params.a, params.B, params.b,
                                   np.asarray(s, dtype=complex))


def W(params: ParameterSet, s):
    """The gamma ratio itself.

    A numerator pole raises :class:`PoleError`; a denominator pole alone gives
    the limit value 0.  Both can only occur at real s.
    """
    validate(params)
    scalar = not np.ndim(s)
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    out = np.empty_like(s_arr)
    for i, si in enumerate(s_arr):
        if _pole_at(params.A, params.a, si):
            raise PoleError(f"numerator gamma pole at s = {si}")
        if _pole_at(params.B, params.b, si):
            out[i] = 0.0
        else:
            out[i] = np.exp(backend.log_gamma_ratio(
                params.A, params.a, params.B, params.b, np.array([si]))[0])
    if scalar:
        v = complex(out[0])
        return v.real if abs(v.imag) <= 1e-15 * abs(v.real) else v
    return out.reshape(np.shape(s))


@dataclass(frozen=True)
class AsymptoticExpansion:
    """Large-argument data for W: W(z) ~ nu rho^z z^(-mu) sum l_r z^(-r)."""

    nu: float
    rho: float
    mu: float
    l: tuple[float, ...]
    M: int


def asymptotic_expansion(params: ParameterSet, M: int) -> AsymptoticExpansion:
    """Build the expansion of order M, sharing the l coefficients verbatim."""
    from .coefficients import compute_l  # deferred: coefficients imports us

    d = derive(params)
    l = compute_l(params, M)
    return AsymptoticExpansion(nu=d.nu, rho=d.rho, mu=d.mu,
                               l=tuple(float(v) for v in l), M=M)


def W_asymptotic(expansion: AsymptoticExpansion, z, M: int | None = None):
    """Evaluate nu rho^z z^(-mu) sum_{r<=M} l_r z^(-r).

    Valid in the sector |arg z| < pi - SECTOR_DELTA with |z| >= 5; outside it
    the series does not represent W and a :class:`DomainError` is raised.
    """
    if M is None:
        M = expansion.M
    if M > expansion.M:
        raise DomainError(f"expansion holds {expansion.M} coefficients, asked for {M}")
    z = complex(z) if not np.ndim(z) else np.asarray(z, dtype=complex)
    zf = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(np.abs(np.angle(zf)) >= math.pi - SECTOR_DELTA):
        raise DomainError("argument outside the asymptotic sector")
    if np.any(np.abs(zf) < 5.0):
        raise DomainError("asymptotic series needs |z| >= 5")
    tail = np.zeros_like(zf)
    for r in range(M, -1, -1):
        tail = tail / zf + expansion.l[r]
    out = (expansion.nu * np.exp(zf * math.log(expansion.rho)
                                 - expansion.mu * np.log(zf)) * tail)
    return out.reshape(np.shape(z)) if np.ndim(z) else complex(out[0])
