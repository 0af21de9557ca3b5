"""Generalized hypergeometric series and the closed forms they provide for
the unit-weight (G) cases with one and two parameter pairs.

Plain forward summation with Kahan accumulation; the callers keep arguments
inside the geometric-convergence region, so no transformation formulas are
needed.  A reciprocal-gamma convention (1/Gamma(nonpositive integer) = 0) is
applied uniformly, which turns the degenerate prefactors into finite limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import rgamma

from .errors import ConvergenceError, DomainError, PoleError
from .polynomials import pochhammer


@dataclass(frozen=True)
class HypSeriesSpec:
    """A pFq evaluation request."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    argument: float
    max_terms: int = 4000
    tail_tol: float = 1e-15

    def __init__(self, upper, lower, argument, max_terms=4000, tail_tol=1e-15):
        object.__setattr__(self, "upper", tuple(float(v) for v in upper))
        object.__setattr__(self, "lower", tuple(float(v) for v in lower))
        object.__setattr__(self, "argument", float(argument))
        object.__setattr__(self, "max_terms", int(max_terms))
        object.__setattr__(self, "tail_tol", float(tail_tol))


def _termination_index(upper) -> int | None:
    """Smallest n with some upper parameter equal to -n, else None."""
    hits = [int(round(-u)) for u in upper
            if u <= 0.0 and abs(u - round(u)) < 1e-12]
    return min(hits) if hits else None


def pfq(spec: HypSeriesSpec) -> float:
    """Sum of prod (upper)_n / (prod (lower)_n n!) z^n.

    Terminating series (some upper parameter a non-positive integer) are
    summed exactly through their last term and may take |z| = 1; otherwise
    |z| < 1 is required.  A lower-parameter pole reached before termination
    is an error.
    """
    z = spec.argument
    stop = _termination_index(spec.upper)
    if stop is None and abs(z) >= 1.0:
        raise DomainError("non-terminating series needs |argument| < 1")
    for lo in spec.lower:
        if lo <= 0.0 and abs(lo - round(lo)) < 1e-12:
            pole_at = int(round(-lo))
            if stop is None or pole_at < stop:
                raise PoleError(
                    f"lower parameter {lo} poles at term {pole_at + 1} "
                    "before the series terminates")
    total = 0.0
    comp = 0.0  # Kahan carry
    term = 1.0
    n = 0
    while True:
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if stop is not None and n >= stop:
            break
        num = 1.0
        for u in spec.upper:
            num *= u + n
        den = 1.0
        for lo in spec.lower:
            den *= lo + n
        term *= num / den / (n + 1) * z
        n += 1
        if stop is None:
            if abs(term) <= spec.tail_tol * max(1.0, abs(total)):
                # geometric regime: one more term bounds the tail
                total += term
                break
            if n >= spec.max_terms:
                raise ConvergenceError(
                    f"series did not meet tail_tol within {spec.max_terms} terms")
    return total


def gauss_2f1_regularized(alpha: float, beta: float, psi: float, w,
                          max_terms: int = 6000, tail_tol: float = 1e-16,
                          embed_power: float = 0.0):
    """sum_n (alpha)_n (beta)_n / (n! Gamma(psi + n)) w^(n + embed_power).

    ``embed_power`` folds an outer algebraic factor w^embed_power into the
    summation so that a negative edge exponent can cancel against the zero
    block of the regularized coefficients instead of overflowing first.

    The regularized Gauss series: entire in psi, so non-positive integer psi
    needs no special casing (the leading terms drop out through 1/Gamma).
    The coefficient c_n = (alpha)_n (beta)_n / (n! Gamma(psi+n)) is carried by
    its term ratio (it is polynomially bounded); building numerator and
    denominator separately would overflow near n ~ 170.
    """
    w_arr = np.atleast_1d(np.asarray(w, dtype=float))
    if np.any(np.abs(w_arr) >= 1.0) and _termination_index((alpha, beta)) is None:
        raise DomainError("needs |w| < 1 unless the series terminates")
    stop = _termination_index((alpha, beta))
    psi_round = round(psi)
    pole_block = int(-psi_round) if (abs(psi - psi_round) < 1e-12
                                     and psi_round <= 0) else -1
    # first index with a nonzero coefficient
    n0 = pole_block + 1
    if n0 == 0:
        coeff = rgamma(psi)
    else:
        # Gamma(psi + n0) = Gamma(1) = 1
        coeff = (pochhammer(alpha, n0) * pochhammer(beta, n0)
                 / math.factorial(n0))
    out = np.zeros_like(w_arr)
    wn = w_arr ** (n0 + embed_power)
    wmax = float(np.max(np.abs(w_arr))) if w_arr.size else 0.0
    for n in range(n0, max_terms):
        out += coeff * wn
        if stop is not None and n >= stop:
            break
        prev = coeff
        coeff *= (alpha + n) * (beta + n) / ((n + 1.0) * (psi + n))
        wn = wn * w_arr
        if stop is None and n > n0 + 4 and prev != 0.0:
            ratio = min(abs(coeff / prev) * wmax, 0.999)
            bound = abs(coeff) * wmax ** (n + 1 + embed_power) / (1.0 - ratio)
            if bound <= tail_tol * max(1.0, float(np.max(np.abs(out)))):
                out += coeff * wn
                break
    else:
        if stop is None:
            raise ConvergenceError("regularized Gauss series did not converge")
    return out.reshape(np.shape(w)) if np.ndim(w) else float(out[0])


def g11_closed(a: float, b: float, z):
    """Unit-weight closed form, one pair: z^a (1-z)^(b-a-1) / Gamma(b-a).

    Identically zero when b - a is a non-positive integer (reciprocal-gamma
    convention).
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any((z_arr <= 0.0) | (z_arr >= 1.0)):
        raise DomainError("argument must lie in (0, 1)")
    out = z_arr ** a * (1.0 - z_arr) ** (b - a - 1.0) * rgamma(b - a)
    return out.reshape(np.shape(z)) if np.ndim(z) else float(out[0])


def g22_closed(a1: float, a2: float, b1: float, b2: float, z):
    """Unit-weight closed form, two pairs:

        z^(a2) (1-z)^(psi-1) * 2F1~(b1-a1, b2-a1; psi; 1-z),

    psi = b1+b2-a1-a2 and 2F1~ the regularized Gauss function (so degenerate
    psi is the finite limit).  The prefactor exponent a2 is paired with the
    shifts b_i - a1; the swapped pairing (a1 with b_i - a2) is the same
    function via an Euler transformation, which the tests confirm against
    contour integration.
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any((z_arr <= 0.0) | (z_arr >= 1.0)):
        raise DomainError("argument must lie in (0, 1)")
    psi = b1 + b2 - a1 - a2
    series = gauss_2f1_regularized(b1 - a1, b2 - a1, psi, 1.0 - z_arr,
                                   embed_power=psi - 1.0)
    out = z_arr ** a2 * np.atleast_1d(series)
    return out.reshape(np.shape(z)) if np.ndim(z) else float(out[0])


def g_case_closed(params, z):
    """Dispatch the closed form for a unit-weight set with p <= 2."""
    if not params.is_g_case or params.p > 2:
        raise DomainError("closed forms cover unit weights with p <= 2 only")
    if params.p == 1:
        return g11_closed(params.a[0], params.b[0], z)
    return g22_closed(params.a[0], params.a[1], params.b[0], params.b[1], z)
