import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetabounds.lanczos import gamma, gamma_pole_distance, loggamma


def _ref_loggamma(z):
    return complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))


@pytest.mark.parametrize("z", [0.5, 1.0, 2.5, 10.0, 0.25 + 3j, 1 + 10j, 0.5 + 100j, 3 + 500j, 0.75 + 1000j, -2.5 + 1j, -7.3 - 4j])
def test_loggamma_matches_mpmath(z):
    got = loggamma(complex(z))
    ref = _ref_loggamma(complex(z))
    # compare exp(), i.e. modulo 2 pi i, plus the real part absolutely
    assert abs(got.real - ref.real) <= 1e-11 * max(1.0, abs(ref.real))
    assert abs(np.exp(1j * (got.imag - ref.imag)) - 1) < 1e-10


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 60), st.floats(-300, 300))
def test_gamma_relative_error(x, y):
    z = complex(x, y)
    ref = complex(mpmath.gamma(mpmath.mpc(x, y)))
    if ref == 0:
        return
    assert abs(gamma(z) / ref - 1) < 2e-12 * max(1.0, abs(y) / 50)


def test_known_values():
    assert gamma(5.0) == pytest.approx(24.0, rel=1e-13)
    assert gamma(0.5) == pytest.approx(np.sqrt(np.pi), rel=1e-13)
    # |Gamma(iy)|^2 = pi / (y sinh(pi y))
    y = 3.7
    assert abs(gamma(1j * y)) ** 2 == pytest.approx(np.pi / (y * np.sinh(np.pi * y)), rel=1e-12)


def test_vectorized_agrees_with_scalar():
    zs = np.array([0.3 + 1j, 2 - 5j, 11 + 0.1j, -1.5 + 2j])
    vec = loggamma(zs)
    for z, v in zip(zs, vec):
        assert v == pytest.approx(loggamma(complex(z)), rel=1e-14)


def test_pole_distance():
    assert gamma_pole_distance(0.0) == 0.0
    assert gamma_pole_distance(-3.0 + 1e-9j) == pytest.approx(1e-9)
    assert gamma_pole_distance(0.5) > 0.4
