import numpy as np
import pytest
import scipy.special as sp

from deltah import backend

pytestmark = pytest.mark.skipif(not backend.HAVE_COMPILED,
                                reason="compiled kernels unavailable")

GRID = np.array([
    1.0, 0.5, 6.0, 2 + 3j, -1.5 + 2j, -1.5 - 2j, 0.1 - 0.9j,
    -7.3 + 0.001j, -7.3 - 0.001j, 0.5 + 1e6j, -200.25 + 3j, 1e6,
    -0.5 + 0j, -3.7 + 0j, 12.5 - 40j, 1e-3 + 1e-3j, -1e-3 + 1e-3j,
], dtype=complex)


@pytest.fixture
def both_backends():
    yield
    backend.set_backend("auto")


def test_loggamma_parity(both_backends):
    backend.set_backend("compiled")
    got = backend.loggamma(GRID)
    ref = sp.loggamma(GRID)
    err = np.abs(got - ref) / np.maximum(1.0, np.abs(ref))
    assert err.max() < 1e-13


def test_digamma_parity(both_backends):
    backend.set_backend("compiled")
    got = backend.digamma(GRID)
    ref = sp.digamma(GRID)
    err = np.abs(got - ref) / np.maximum(1.0, np.abs(ref))
    assert err.max() < 1e-12


def test_ratio_kernels_parity(both_backends):
    A = np.array([0.5, 1.5])
    a = np.array([0.3, 0.7])
    B = np.array([1.0, 1.0])
    b = np.array([1.0, 1.2])
    s = 0.53 + np.linspace(0.0, 30.0, 13) * np.exp(1j * (np.pi - 0.35))
    backend.set_backend("compiled")
    r1 = backend.log_gamma_ratio(A, a, B, b, s)
    w1 = backend.digamma_ratio_weight(A, a, B, b, s)
    backend.set_backend("python")
    r2 = backend.log_gamma_ratio(A, a, B, b, s)
    w2 = backend.digamma_ratio_weight(A, a, B, b, s)
    assert np.abs(r1 - r2).max() < 1e-12
    assert np.abs(w1 - w2).max() < 1e-12


def test_poles_are_nan():
    backend.set_backend("compiled")
    try:
        out = backend.loggamma(np.array([0.0 + 0j, -2.0 + 0j]))
        assert np.all(np.isnan(out.real))
    finally:
        backend.set_backend("auto")


def test_scalar_shape_passthrough(both_backends):
    backend.set_backend("compiled")
    val = backend.loggamma(2.5 + 0j)
    assert np.ndim(val) == 0
    arr = backend.loggamma(np.array([[2.5 + 0j, 3.5]]))
    assert arr.shape == (1, 2)


def test_evaluator_results_backend_independent(both_backends):
    from deltah import ContourSpec, ParameterSet, eval_contour
    ps = ParameterSet(A=(0.5, 1.5), a=(0.3, 0.7), B=(1, 1), b=(1.0, 1.2))
    backend.set_backend("compiled")
    v1 = eval_contour(ps, 0.5, ContourSpec(tail_tol=1e-11)).value
    backend.set_backend("python")
    v2 = eval_contour(ps, 0.5, ContourSpec(tail_tol=1e-11)).value
    assert v1 == pytest.approx(v2, rel=1e-11)
