"""Pure NumPy/SciPy implementations of the hot kernels.

Same call surface as the compiled module ``_kernels``; selected at import
time when the extension is unavailable (or forced via DELTAH_BACKEND).
"""

from __future__ import annotations

import numpy as np
import scipy.special as sp

NAME = "python"


def loggamma(z: np.ndarray) -> np.ndarray:
    """Principal-branch log-gamma on a complex array."""
    return sp.loggamma(z)


def digamma(z: np.ndarray) -> np.ndarray:
    """Digamma on a complex array."""
    return sp.digamma(z)


def log_gamma_ratio(num_scale: np.ndarray, num_shift: np.ndarray,
                    den_scale: np.ndarray, den_shift: np.ndarray,
                    s: np.ndarray) -> np.ndarray:
    """sum_k logGamma(A_k s + a_k) - sum_j logGamma(B_j s + b_j), elementwise in s."""
    s = np.asarray(s, dtype=np.complex128)
    out = np.zeros_like(s)
    for w, sh in zip(num_scale, num_shift):
        out += sp.loggamma(w * s + sh)
    for w, sh in zip(den_scale, den_shift):
        out -= sp.loggamma(w * s + sh)
    return out


def digamma_ratio_weight(num_scale: np.ndarray, num_shift: np.ndarray,
                         den_scale: np.ndarray, den_shift: np.ndarray,
                         s: np.ndarray) -> np.ndarray:
    """sum_j B_j psi(B_j s + b_j) - sum_k A_k psi(A_k s + a_k), elementwise in s.

    The log-derivative of the denominator/numerator gamma ratio; with unit
    weights it reduces to sum(psi(b+s) - psi(a+s)).
    """
    s = np.asarray(s, dtype=np.complex128)
    out = np.zeros_like(s)
    for w, sh in zip(den_scale, den_shift):
        out += w * sp.digamma(w * s + sh)
    for w, sh in zip(num_scale, num_shift):
        out -= w * sp.digamma(w * s + sh)
    return out
