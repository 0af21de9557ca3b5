"""Bernoulli numbers/polynomials, generalized Bernoulli (Noerlund) polynomials,
signless non-central Stirling numbers of the first kind, and rising factorials.

These are the building blocks of every coefficient family in the package.
Everything is double precision; convolution-style recurrences accumulate with
``math.fsum`` to suppress cancellation noise.
"""

from __future__ import annotations

import math
import threading

from scipy.special import zeta

from .errors import DomainError

#: hard cap on polynomial orders; higher orders are outside the supported
#: range of every evaluation routine and start to lose accuracy anyway
MAX_ORDER = 64

#: cap for the plain Bernoulli-number cache (B_n overflows near n ~ 260)
_MAX_BERNOULLI = 250


class BernoulliCache:
    """Append-only cache of Bernoulli numbers B_n = B_n(0) and binomials.

    Single-writer extension under a lock; reads are plain list indexing on
    already-published entries, so concurrent readers are safe.
    """

    def __init__(self, max_order: int = 32):
        self._lock = threading.Lock()
        self.bernoulli_numbers: list[float] = []
        self.binomial_table: list[list[float]] = []
        self.max_order = 0
        self.extend(max_order)

    def extend(self, max_order: int) -> None:
        """Grow the cache; existing entries never change."""
        max_order = min(int(max_order), _MAX_BERNOULLI)
        with self._lock:
            if max_order <= self.max_order and self.bernoulli_numbers:
                return
            nums = list(self.bernoulli_numbers)
            for n in range(len(nums), max_order + 1):
                nums.append(_bernoulli_number(n))
            binom = self.binomial_table
            for n in range(len(binom), max_order + 1):
                if n == 0:
                    binom.append([1.0])
                else:
                    prev = binom[n - 1]
                    row = [1.0] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1.0]
                    binom.append(row)
            self.bernoulli_numbers = nums
            self.max_order = max_order

    def number(self, n: int) -> float:
        if n > self.max_order:
            self.extend(max(n, 2 * self.max_order))
        return self.bernoulli_numbers[n]

    def binomial(self, n: int, k: int) -> float:
        if n > self.max_order:
            self.extend(max(n, 2 * self.max_order))
        return self.binomial_table[n][k]


def _bernoulli_number(n: int) -> float:
    # even orders via the zeta reflection; stable at all supported orders,
    # unlike the triangular recurrences which lose digits past n ~ 30
    if n == 0:
        return 1.0
    if n == 1:
        return -0.5
    if n % 2 == 1:
        return 0.0
    log_mag = (math.log(2.0) + math.lgamma(n + 1.0) + math.log(zeta(float(n)))
               - n * math.log(2.0 * math.pi))
    sign = 1.0 if n % 4 == 2 else -1.0
    return sign * math.exp(log_mag)


_cache = BernoulliCache()


def bernoulli_number(n: int) -> float:
    """B_n with the B_1 = -1/2 convention of t*e^(x t)/(e^t - 1)."""
    if n < 0:
        raise DomainError("order must be >= 0")
    return _cache.number(n)


def bernoulli_scaled(n: int) -> float:
    """B_n / n!, i.e. the n-th Taylor coefficient of t/(e^t - 1).

    Computed straight from the zeta form 2 zeta(n)/(2 pi)^n, so it never
    overflows; usable at arbitrary order.
    """
    if n < 0:
        raise DomainError("order must be >= 0")
    if n == 0:
        return 1.0
    if n == 1:
        return -0.5
    if n % 2 == 1:
        return 0.0
    sign = 1.0 if n % 4 == 2 else -1.0
    return sign * 2.0 * float(zeta(float(n))) * math.exp(-n * math.log(2.0 * math.pi))


def bernoulli_poly(n: int, x: float) -> float:
    """Bernoulli polynomial B_n(x) via the binomial expansion over cached B_k."""
    if n < 0:
        raise DomainError("order must be >= 0")
    if n == 0:
        return 1.0
    _cache.extend(n)
    terms = []
    xp = 1.0  # x^(n-k) built from the k=n end downward
    for k in range(n, -1, -1):
        bk = _cache.bernoulli_numbers[k]
        if bk != 0.0:
            terms.append(_cache.binomial_table[n][k] * bk * xp)
        xp *= x
    return math.fsum(terms)


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial (alpha)_n = alpha (alpha+1) ... (alpha+n-1).

    Defined by the product, so it is finite (possibly zero) even where the
    gamma-ratio form would be formal.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    out = 1.0
    for i in range(n):
        out *= alpha + i
    return out


# --- power series helpers (coefficient lists c[k] = [t^k] f(t)) -------------

def _series_log_ratio(n: int) -> list[float]:
    """Coefficients of log(t / (e^t - 1)) up to order n (constant term 0)."""
    _cache.extend(n)
    f = [_cache.number(m) / math.factorial(m) for m in range(n + 1)]  # t/(e^t-1)
    lam = [0.0] * (n + 1)
    for m in range(1, n + 1):
        corr = math.fsum(j * lam[j] * f[m - j] for j in range(1, m))
        lam[m] = f[m] - corr / m
    return lam


_lam_lock = threading.Lock()
_lam_table: list[float] = []


def _log_ratio_coeffs(n: int) -> list[float]:
    global _lam_table
    with _lam_lock:
        if len(_lam_table) < n + 1:
            _lam_table = _series_log_ratio(max(n, 2 * len(_lam_table)))
        return _lam_table


def _exp_series(h: list[float], n: int) -> list[float]:
    """Coefficients of exp(h(t)) up to order n, h with zero constant term.

    Uses g' = h' g, i.e. k g_k = sum_m m h_m g_{k-m}; forward stable relative
    to the largest coefficient produced.
    """
    g = [0.0] * (n + 1)
    g[0] = 1.0
    for k in range(1, n + 1):
        g[k] = math.fsum(m * h[m] * g[k - m] for m in range(1, k + 1)) / k
    return g


def noerlund_row_scaled(sigma: float, x: float, n: int) -> list[float]:
    """Scaled generalized Bernoulli row [B_k^(sigma)(x) / k! for k = 0..n].

    These are the Taylor coefficients of (t/(e^t-1))^sigma * e^(x t), computed
    by exponentiating sigma*log(t/(e^t-1)) + x*t term by term.
    """
    if n < 0:
        raise DomainError("order must be >= 0")
    lam = _log_ratio_coeffs(n)
    h = [0.0] * (n + 1)
    for m in range(1, n + 1):
        h[m] = sigma * lam[m]
    if n >= 1:
        h[1] += x
    return _exp_series(h, n)


def noerlund_poly(k: int, sigma: float, x: float) -> float:
    """Generalized Bernoulli polynomial B_k^(sigma)(x).

    Computed through the stable exponential recurrence on the generating
    function rather than an explicit alternating sum.  Order capped at
    ``MAX_ORDER``; the roundoff in the underlying row grows roughly like
    eps * exp(|sigma|/2) near k ~ sigma/2, which is why large orders are
    refused rather than silently degraded.
    """
    if k < 0:
        raise DomainError("order must be >= 0")
    if k > MAX_ORDER:
        raise DomainError(f"order {k} above the supported cap {MAX_ORDER}")
    row = noerlund_row_scaled(sigma, x, k)
    return row[k] * math.factorial(k)


def stirling_row_scaled(sigma: float, n: int) -> list[float]:
    """Row [s_sigma(n, l) / n! for l = 0..n] of non-central Stirling numbers.

    s_sigma(n, l) is the coefficient of x^l in the rising factorial
    (sigma + x)_n.  The 1/n! scaling keeps entries polynomially bounded at
    large n.  Recurrence (from (sigma+x)_n = (sigma+x)_{n-1} (sigma+n-1+x)):

        w_n(l) = ((sigma+n-1) w_{n-1}(l) + l-shift of w_{n-1}) / n
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    row = [1.0]
    for m in range(1, n + 1):
        prev = row
        row = [0.0] * (m + 1)
        c = (sigma + m - 1) / m
        for l in range(m):
            row[l] += c * prev[l]
            row[l + 1] += prev[l] / m
    return row


def stirling_noncentral(sigma: float, n: int, l: int) -> float:
    """Signless non-central Stirling number of the first kind s_sigma(n, l)."""
    if not 0 <= l <= n:
        raise DomainError(f"need 0 <= l <= n, got n={n}, l={l}")
    if n > 170:
        raise DomainError("n too large for an unscaled Stirling value")
    return stirling_row_scaled(sigma, n)[l] * math.factorial(n)


def diagonal_row_scaled(beta: float, x: float, n: int) -> list[float]:
    """Coefficients D_k of (1-w)^(x-1) * (-log(1-w)/w)^(beta-1), k = 0..n.

    Equivalently D_k = (-1)^k B_k^(k+beta)(x) / k!: the diagonal family of
    generalized Bernoulli polynomials whose order grows with the index.
    Full rows at large order are ill-conditioned; this diagonal generating
    function stays polynomially bounded, so the whole family is computable.
    """
    # log(-log(1-w)/w) = log(sum_j w^j/(j+1)), via the series-log recurrence
    f = [1.0 / (j + 1) for j in range(n + 1)]
    m_ser = [0.0] * (n + 1)
    for m in range(1, n + 1):
        corr = math.fsum(j * m_ser[j] * f[m - j] for j in range(1, m))
        m_ser[m] = f[m] - corr / m
    # full log-GF: (beta-1)*m_ser + (x-1)*log(1-w), the latter = -sum w^m/m
    h = [0.0] * (n + 1)
    for m in range(1, n + 1):
        h[m] = (beta - 1.0) * m_ser[m] - (x - 1.0) / m
    return _exp_series(h, n)
