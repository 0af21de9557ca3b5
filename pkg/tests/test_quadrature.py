import math

import numpy as np
import pytest
from scipy.special import beta as beta_fn

from deltah.quadrature import (adaptive_gk, gk_panel, integrate_halfline,
                               max_nodes_cap, tanh_sinh)


def test_panel_polynomial_exactness():
    # 15-point Kronrod integrates degree-22 polynomials exactly
    val, _ = gk_panel(lambda x: x ** 12, 0.0, 1.0)
    assert val == pytest.approx(1.0 / 13.0, rel=1e-14)


def test_panel_error_estimate_is_conservative():
    val, err = gk_panel(np.sin, 0.0, math.pi)
    assert abs(val - 2.0) <= max(err, 1e-13)


def test_adaptive_oscillatory():
    r = adaptive_gk(lambda x: np.exp(-x) * np.cos(10 * x), 0.0, 10.0,
                    tol_abs=1e-13)
    exact = (1 - math.exp(-10) * (math.cos(100) - 10 * math.sin(100))) / 101
    assert r.value.real == pytest.approx(exact, abs=1e-12)


def test_tanh_sinh_beta_integral():
    r = tanh_sinh(lambda x: x ** -0.5 * (1 - x) ** -0.3, 0.0, 1.0, tol=1e-12)
    assert r.value.real == pytest.approx(beta_fn(0.5, 0.7), rel=1e-11)


def test_tanh_sinh_weak_endpoint_singularity():
    # exponent 0.05 stresses the node range near the singular endpoint
    eps = 0.05
    r = tanh_sinh(lambda v: v ** (eps - 1.0), 0.0, 0.5, tol=1e-12)
    assert r.value.real == pytest.approx(0.5 ** eps / eps, rel=1e-11)


def test_tanh_sinh_log_endpoint():
    r = tanh_sinh(lambda x: np.log(x), 0.0, 1.0, tol=1e-12)
    assert r.value.real == pytest.approx(-1.0, abs=1e-12)


def test_tanh_sinh_smooth():
    import mpmath as mp
    r = tanh_sinh(lambda x: np.sin(3 * x) * np.exp(x), 2.0, 5.0, tol=1e-12)
    exact = float(mp.quad(lambda x: mp.sin(3 * x) * mp.exp(x), [2, 5]))
    assert r.value.real == pytest.approx(exact, abs=1e-11)


def test_halfline_exponential():
    r = integrate_halfline(lambda t: np.exp(-t) * np.cos(t), first_len=1.0,
                           tol=1e-11, tail_bound=lambda T: 2 * math.exp(-T))
    assert r.value.real == pytest.approx(0.5, abs=1e-10)
    assert r.error < 1e-8


def test_max_nodes_env_override(monkeypatch):
    monkeypatch.setenv("DELTAH_MAX_NODES", "1234")
    assert max_nodes_cap() == 1234
    monkeypatch.setenv("DELTAH_MAX_NODES", "junk")
    assert max_nodes_cap(777) == 777
