"""Coefficient families driving both evaluation routes.

Four related sequences are built from the parameter vectors:

* ``q_m``: Bernoulli-polynomial sums, the log-derivative data of the ratio.
* ``l_r``: solution of the convolution recurrence r l_r = sum q_m l_{r-m};
  the coefficients of the large-argument expansion of the gamma ratio.
  Also available by an explicit partition sum and a determinant formula.
* ``q~_m, c_r``: the same pair shifted by the free splitting parameter theta,
  feeding the singular expansion at the support edge.
* ``a_n``: the expansion coefficients themselves, by two routes (non-central
  Stirling numbers against c_r, or generalized Bernoulli rows against l_r).

Plus the classical G-function edge coefficients g_n (nested rising-factorial
sum), needed for the polynomial Mellin correction and the psi-weighted series.

Large-index work is done on factorially rescaled sequences (q_m/m!, c_r/r!,
s(n,r) r!/n!) which stay polynomially bounded, so series of several hundred
terms are computable without overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import rgamma

from .errors import DomainError, PoleError
from .params import ParameterSet, derive, validate
from .polynomials import (MAX_ORDER, bernoulli_poly, bernoulli_scaled,
                          noerlund_row_scaled, pochhammer)

_EPS = np.finfo(float).eps


# --------------------------------------------------------------------------
# q and l families
# --------------------------------------------------------------------------

def compute_q(params: ParameterSet, m: int) -> float:
    """q_m = ((-1)^(m+1)/(m+1)) [sum_k B_{m+1}(a_k)/A_k^m - sum_j B_{m+1}(b_j)/B_j^m]."""
    if m < 1:
        raise DomainError("q is defined for m >= 1")
    validate(params)
    sign = 1.0 if m % 2 == 1 else -1.0
    s = math.fsum(bernoulli_poly(m + 1, sh) / w ** m
                  for w, sh in zip(params.A, params.a))
    s -= math.fsum(bernoulli_poly(m + 1, sh) / w ** m
                   for w, sh in zip(params.B, params.b))
    return sign / (m + 1) * s


def _bern_scaled(n: int, x: float) -> float:
    """B_n(x)/n! via the convolution of B_k/k! with x^j/j! (no overflow)."""
    ex = [1.0] * (n + 1)
    for j in range(1, n + 1):
        ex[j] = ex[j - 1] * x / j
    terms = []
    for k in range(0, n + 1):
        bk = bernoulli_scaled(k)
        if bk != 0.0:
            terms.append(bk * ex[n - k])
    return math.fsum(terms)


def _qhat_array(params: ParameterSet, theta: float | None, m_max: int) -> np.ndarray:
    """[q_m / m!] for m = 1..m_max (index 0 unused); theta=None gives plain q.

    Scaled form: q_m/m! = (-1)^(m+1) [sum B^_(m+1)(a_k)/A_k^m - ...] with
    B^_n = B_n/n!, plus the theta correction (B^_(m+1)(theta+mu)-B^_(m+1)(theta+1))
    when theta is given.
    """
    out = np.zeros(m_max + 1)
    mu = derive(params).mu if theta is not None else 0.0
    for m in range(1, m_max + 1):
        sign = 1.0 if m % 2 == 1 else -1.0
        s = math.fsum(_bern_scaled(m + 1, sh) / w ** m
                      for w, sh in zip(params.A, params.a))
        s -= math.fsum(_bern_scaled(m + 1, sh) / w ** m
                       for w, sh in zip(params.B, params.b))
        if theta is not None:
            s += _bern_scaled(m + 1, theta + mu) - _bern_scaled(m + 1, theta + 1.0)
        out[m] = sign * s
    return out


def compute_l(params: ParameterSet, r_max: int) -> np.ndarray:
    """l_0..l_{r_max} via the recurrence l_r = (1/r) sum_{m<=r} q_m l_{r-m}."""
    if r_max > 170:
        raise DomainError("unscaled l coefficients overflow past r ~ 170")
    q = [0.0] + [compute_q(params, m) for m in range(1, r_max + 1)]
    l = [1.0]
    for r in range(1, r_max + 1):
        l.append(math.fsum(q[m] * l[r - m] for m in range(1, r + 1)) / r)
    return np.array(l)


def _partitions(n: int, max_part: int | None = None):
    """Yield partitions of n as {part: multiplicity} dicts."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield {}
        return
    for part in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def compute_l_explicit(params: ParameterSet, r: int) -> float:
    """l_r as the partition sum over k_1 + 2 k_2 + ... + r k_r = r of
    prod_i (q_i/i)^(k_i) / k_i!."""
    if r < 0:
        raise DomainError("r must be >= 0")
    if r > 20:
        raise DomainError("partition count grows too fast past r = 20")
    if r == 0:
        return 1.0
    q = [0.0] + [compute_q(params, m) for m in range(1, r + 1)]
    total = []
    for part in _partitions(r):
        term = 1.0
        for i, k in part.items():
            term *= (q[i] / i) ** k / math.factorial(k)
        total.append(term)
    return math.fsum(total)


def compute_l_determinant(params: ParameterSet, r: int) -> float:
    """l_r = det(Omega_r)/r! with the almost-triangular companion matrix
    omega[i,j] = q_{i-j+1} (i-1)!/(j-1)! below/on the diagonal and -1 on the
    first superdiagonal."""
    if r < 0:
        raise DomainError("r must be >= 0")
    if r > 15:
        raise DomainError("determinant conditioning degrades past r = 15")
    if r == 0:
        return 1.0
    q = [0.0] + [compute_q(params, m) for m in range(1, r + 1)]
    om = np.zeros((r, r))
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i >= j:
                om[i - 1, j - 1] = (q[i - j + 1]
                                    * math.factorial(i - 1) / math.factorial(j - 1))
            elif i == j - 1:
                om[i - 1, j - 1] = -1.0
    return float(np.linalg.det(om)) / math.factorial(r)


def compute_q_tilde(params: ParameterSet, theta: float, m: int) -> float:
    """q~_m = q_m + ((-1)^(m+1)/(m+1)) [B_{m+1}(theta+mu) - B_{m+1}(theta+1)]."""
    if m < 1:
        raise DomainError("q~ is defined for m >= 1")
    mu = derive(params).mu
    sign = 1.0 if m % 2 == 1 else -1.0
    corr = sign / (m + 1) * (bernoulli_poly(m + 1, theta + mu)
                             - bernoulli_poly(m + 1, theta + 1.0))
    return compute_q(params, m) + corr


def compute_c(params: ParameterSet, theta: float, r_max: int) -> np.ndarray:
    """c_0..c_{r_max}: the l recurrence driven by q~ instead of q."""
    if r_max > 170:
        raise DomainError("unscaled c coefficients overflow past r ~ 170")
    qt = [0.0] + [compute_q_tilde(params, theta, m) for m in range(1, r_max + 1)]
    c = [1.0]
    for r in range(1, r_max + 1):
        c.append(math.fsum(qt[m] * c[r - m] for m in range(1, r + 1)) / r)
    return np.array(c)


# --------------------------------------------------------------------------
# scaled series machinery (large n)
# --------------------------------------------------------------------------

def _binomial_rows(n: int) -> list[np.ndarray]:
    rows = [np.array([1.0])]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = np.empty(m + 1)
        row[0] = row[m] = 1.0
        row[1:m] = prev[:-1] + prev[1:]
        rows.append(row)
    return rows


@lru_cache(maxsize=64)
def _ctilde_array(params: ParameterSet, theta: float, r_max: int) -> np.ndarray:
    """[c_r / r!] for r = 0..r_max, computed entirely in scaled variables:
    c~_r = (1/r) sum_m (q_m~/m!) c~_{r-m} / binom(r, m)."""
    qhat = _qhat_array(params, theta, r_max)
    binom = _binomial_rows(r_max)
    ct = np.zeros(r_max + 1)
    ct[0] = 1.0
    for r in range(1, r_max + 1):
        terms = qhat[1:r + 1] * ct[r - 1::-1] / binom[r][1:r + 1]
        ct[r] = math.fsum(terms) / r
    return ct


def _rn_factor(mu: float, n_max: int) -> np.ndarray:
    """R_n = n! / Gamma(mu + n), by a stable ratio recurrence.

    For non-positive integer mu, R_n = 0 until the gamma argument leaves the
    poles; the recurrence is restarted after the zero block.
    """
    out = np.zeros(n_max + 1)
    out[0] = rgamma(mu)
    for n in range(1, n_max + 1):
        d = mu + n - 1.0
        if d == 0.0:
            # mu = 1 - n exactly: R_n = n!/Gamma(1) = n!
            out[n] = math.factorial(n)
        else:
            out[n] = out[n - 1] * n / d
    return out


def series_coeffs_stirling(params: ParameterSet, theta: float,
                           n_max: int) -> np.ndarray:
    """Edge-expansion coefficients beta_n (Stirling route), n = 0..n_max.

    beta_n = (1/Gamma(mu+n)) sum_r c_r s_{theta+mu}(n, r), computed as
    R_n * sum_r c~_r w_n(r) with the rescaled triangle w_n(r) = r! s(n,r)/n!.
    Stable to several hundred terms.
    """
    d = derive(params)
    sigma = theta + d.mu
    ct = _ctilde_array(params, theta, n_max)
    rn = _rn_factor(d.mu, n_max)
    beta = np.zeros(n_max + 1)
    w = np.array([1.0])
    beta[0] = rn[0] * ct[0]
    for n in range(1, n_max + 1):
        nw = np.zeros(n + 1)
        cfac = (sigma + n - 1.0) / n
        nw[:n] = cfac * w
        nw[1:] += (np.arange(1, n + 1) / n) * w
        w = nw
        beta[n] = rn[n] * float(np.dot(ct[:n + 1], w))
    return beta


def series_coeffs_noerlund(params: ParameterSet, theta: float,
                           n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Edge-expansion coefficients beta_n (generalized-Bernoulli route).

    beta_n = sum_{r+k=n} (-1)^k l_r / Gamma(r+mu) * B_k^(n+mu)(-theta) / k!.

    Returns (beta, roundoff): the polynomial rows at order n + mu pass
    through intermediates of size ~ max_k |B_k^(n+mu)(-theta)/k!|, so the
    absolute roundoff floor grows with n; it is reported per coefficient so
    callers can budget it honestly.  Capped at the polynomial order limit.
    """
    if n_max > MAX_ORDER:
        raise DomainError(
            f"direct generalized-Bernoulli rows are capped at order {MAX_ORDER}")
    d = derive(params)
    l = compute_l(params, n_max)
    lg = l * rgamma(d.mu + np.arange(n_max + 1))
    beta = np.zeros(n_max + 1)
    rnd = np.zeros(n_max + 1)
    sgn = np.ones(n_max + 1)
    sgn[1::2] = -1.0
    for n in range(n_max + 1):
        row = np.array(noerlund_row_scaled(n + d.mu, -theta, n))
        terms = sgn[:n + 1] * row * lg[n::-1]
        beta[n] = math.fsum(terms)
        rnd[n] = _EPS * float(np.max(np.abs(row))) * float(np.sum(np.abs(lg[:n + 1])))
    return beta, rnd


def compute_a(params: ParameterSet, theta: float, n_max: int,
              route: str = "stirling") -> np.ndarray:
    """Expansion coefficients a_n, n = 0..n_max, by either route.

    stirling:  a_n = (nu/n!) sum_r c_r s_{theta+mu}(n, r)
    noerlund:  a_n = (nu/n!) Gamma(n+mu) sum_{r+k=n} (-1)^k l_r
               B_k^(n+mu)(-theta) / (k! Gamma(r+mu))

    The two agree identically in exact arithmetic; keeping both is the point
    (dual-route validation).  The noerlund route needs Gamma(n+mu) as a
    prefactor and is therefore rejected for non-positive integer mu.
    """
    validate(params)
    d = derive(params)
    if route == "stirling":
        sigma = theta + d.mu
        ct = _ctilde_array(params, theta, n_max)
        out = np.zeros(n_max + 1)
        w = np.array([1.0])
        out[0] = d.nu
        for n in range(1, n_max + 1):
            nw = np.zeros(n + 1)
            nw[:n] = (sigma + n - 1.0) / n * w
            nw[1:] += (np.arange(1, n + 1) / n) * w
            w = nw
            out[n] = d.nu * float(np.dot(ct[:n + 1], w))
        return out
    if route == "noerlund":
        mu_round = round(d.mu)
        if abs(d.mu - mu_round) < 1e-12 and mu_round <= 0:
            raise PoleError(
                "noerlund route for a_n has a Gamma(n+mu) prefactor; "
                "mu a non-positive integer hits its poles")
        beta, _ = series_coeffs_noerlund(params, theta, n_max)
        # a_n = nu Gamma(n+mu)/n! * beta_n = nu beta_n / R_n
        return d.nu * beta / _rn_factor(d.mu, n_max)
    raise DomainError(f"unknown route {route!r}")


# --------------------------------------------------------------------------
# aggregate table
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientTable:
    """All coefficient arrays for one (params, theta) pair, with provenance."""

    q: tuple[float, ...]
    l: tuple[float, ...]
    q_tilde: tuple[float, ...]
    c: tuple[float, ...]
    a_coeffs: tuple[float, ...]
    theta: float
    max_index: int
    route_tags: dict = field(compare=False)


def coefficient_table(params: ParameterSet, theta: float, max_index: int,
                      a_route: str = "stirling") -> CoefficientTable:
    if max_index > MAX_ORDER:
        raise DomainError(f"tables are capped at max_index {MAX_ORDER}")
    q = [0.0] + [compute_q(params, m) for m in range(1, max_index + 1)]
    qt = [0.0] + [compute_q_tilde(params, theta, m) for m in range(1, max_index + 1)]
    l = compute_l(params, max_index)
    c = compute_c(params, theta, max_index)
    a = compute_a(params, theta, max_index, route=a_route)
    return CoefficientTable(
        q=tuple(q), l=tuple(l), q_tilde=tuple(qt), c=tuple(c),
        a_coeffs=tuple(a), theta=theta, max_index=max_index,
        route_tags={"q": "direct", "q_tilde": "direct", "l": "recurrence",
                    "c": "recurrence", "a_coeffs": a_route})


# --------------------------------------------------------------------------
# G-function edge coefficients (nested rising-factorial sum)
# --------------------------------------------------------------------------

def _g_core(alpha: tuple[float, ...], beta: tuple[float, ...],
            n_max: int) -> np.ndarray:
    """g_n for the reduced lower vector alpha (length P-1) against the upper
    vector beta (length P):

        g_n = sum_{0<=j_1<=...<=j_{P-2}<=n} prod_{m=1}^{P-1}
              (psi_m + j_{m-1})_{j_m - j_{m-1}} / (j_m - j_{m-1})!
              * (beta_{m+1} - alpha_m)_{j_m - j_{m-1}}

    with psi_m = sum_{i<=m} (beta_i - alpha_i), j_0 = 0, j_{P-1} = n.
    Evaluated by P-1 successive index convolutions, O(P n^2).
    """
    P = len(beta)
    if len(alpha) != P - 1:
        raise DomainError("need len(alpha) == len(beta) - 1")
    out = np.zeros(n_max + 1)
    out[0] = 1.0
    if P == 1:
        return out
    t = np.zeros(n_max + 1)
    t[0] = 1.0
    for m in range(1, P):
        psi_m = math.fsum(beta[i] - alpha[i] for i in range(m))
        fac = beta[m] - alpha[m - 1]
        nt = np.zeros(n_max + 1)
        for jp in range(n_max + 1):
            v = t[jp]
            if v == 0.0:
                continue
            span = n_max - jp
            if span == 0:
                nt[jp] += v
                continue
            dd = np.arange(1, span + 1)
            steps = (psi_m + jp + dd - 1.0) * (fac + dd - 1.0) / dd
            row = np.concatenate(([1.0], np.cumprod(steps)))
            nt[jp:] += v * row
        t = nt
    return t


def noerlund_g(alpha, beta, n_max: int) -> np.ndarray:
    """Edge coefficients for arbitrary reduced-lower/upper shift vectors."""
    return _g_core(tuple(float(v) for v in alpha),
                   tuple(float(v) for v in beta), n_max)


@dataclass(frozen=True)
class NoerlundGTable:
    """g_n table for a unit-weight parameter pair with one lower shift removed."""

    p: int
    removed_index: int  # 1-based position of the excluded lower shift
    g: tuple[float, ...]
    a_vec: tuple[float, ...]
    b_vec: tuple[float, ...]


def compute_g(a_vec, b_vec, removed_k: int, n_max: int) -> NoerlundGTable:
    """g_n(a_[k]; b) for the unit-weight case.

    The reduction for k != p follows the exchange convention: swap a_k with
    a_p, then drop the last entry.
    """
    a_vec = tuple(float(v) for v in a_vec)
    b_vec = tuple(float(v) for v in b_vec)
    p = len(a_vec)
    if len(b_vec) != p:
        raise DomainError("unit-weight case needs len(a) == len(b)")
    if not 1 <= removed_k <= p:
        raise DomainError(f"removed index must be in 1..{p}")
    work = list(a_vec)
    work[removed_k - 1], work[p - 1] = work[p - 1], work[removed_k - 1]
    g = _g_core(tuple(work[:p - 1]), b_vec, n_max)
    return NoerlundGTable(p=p, removed_index=removed_k, g=tuple(float(v) for v in g),
                          a_vec=a_vec, b_vec=b_vec)


def g_nested_literal(alpha, beta, n: int) -> float:
    """Literal nested-loop evaluation of the g_n sum (small cases only).

    Exponential cost; retained as the independent oracle for the convolution
    evaluation.
    """
    alpha = tuple(float(v) for v in alpha)
    beta = tuple(float(v) for v in beta)
    P = len(beta)
    if P == 1:
        return 1.0 if n == 0 else 0.0
    psis = [math.fsum(beta[i] - alpha[i] for i in range(m)) for m in range(P)]

    def rec(m: int, j_prev: int) -> float:
        # place j_m; the last index j_{P-1} is pinned to n
        if m == P - 1:
            d = n - j_prev
            if d < 0:
                return 0.0
            return (pochhammer(psis[m] + j_prev, d) / math.factorial(d)
                    * pochhammer(beta[m] - alpha[m - 1], d))
        total = 0.0
        for j in range(j_prev, n + 1):
            d = j - j_prev
            step = (pochhammer(psis[m] + j_prev, d) / math.factorial(d)
                    * pochhammer(beta[m] - alpha[m - 1], d))
            if step != 0.0:
                total += step * rec(m + 1, j)
        return total

    return rec(1, 0)
