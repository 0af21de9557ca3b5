"""Kernel backend selection: compiled extension with pure-Python fallback.

The compiled module is preferred when importable.  ``DELTAH_BACKEND`` forces
a choice (``python`` or ``compiled``); :func:`set_backend` switches at
runtime, which the benchmark and the parity tests rely on.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels  # type: ignore[attr-defined]
    HAVE_COMPILED = True
except ImportError:
    _kernels = None  # type: ignore[assignment]
    HAVE_COMPILED = False

_impl = _kernels_py


def set_backend(name: str) -> str:
    """Select 'python', 'compiled' or 'auto'; returns the active backend name."""
    global _impl
    if name == "python":
        _impl = _kernels_py
    elif name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernels are not available")
        _impl = _kernels
    elif name == "auto":
        _impl = _kernels if HAVE_COMPILED else _kernels_py
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _impl.NAME


def active_backend() -> str:
    return _impl.NAME


def loggamma(z):
    return _impl.loggamma(z)


def digamma(z):
    return _impl.digamma(z)


def log_gamma_ratio(num_scale, num_shift, den_scale, den_shift, s):
    return _impl.log_gamma_ratio(num_scale, num_shift, den_scale, den_shift, s)


def digamma_ratio_weight(num_scale, num_shift, den_scale, den_shift, s):
    return _impl.digamma_ratio_weight(num_scale, num_shift, den_scale, den_shift, s)


set_backend(os.environ.get("DELTAH_BACKEND", "auto"))
