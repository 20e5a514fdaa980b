import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetabounds.density import (
    QuadratureError,
    SimpleRootSubset,
    SingularityError,
    ball_integral,
    beta,
    beta_tilde,
    c_function,
    delta_exponent,
    density_grid,
    integrate_ball,
    plancherel_density,
    shift_bound_check,
)
from thetabounds.rootsys import (
    SpectralParameter,
    build_root_system,
    orthogonal,
    symplectic_split,
    unitary,
    weyl_group,
)

O31 = build_root_system(orthogonal(3, 1))
O41 = build_root_system(orthogonal(4, 1))
O52 = build_root_system(orthogonal(5, 2))
U21 = build_root_system(unitary(2, 1))
U32 = build_root_system(unitary(3, 2))


def _mp_factor(z, m_a, m_2a):
    """One Gindikin-Karpelevich factor in mpmath, same normalisation."""
    z = mpmath.mpc(z.real, z.imag)
    d = m_a + m_2a
    return (mpmath.power(2, -z) * mpmath.gamma(z)
            / (mpmath.gamma((m_a / 2 + 1 + z) / 2) * mpmath.gamma((m_a / 2 + m_2a + z) / 2))
            * mpmath.sqrt(4 * mpmath.pi) / mpmath.power(2, d))


def test_beta_tilde_frozen_b2():
    # even root multiplicity 1, short roots 3: (1+3)(1+7)(1+10)^3(1+4)^3
    lam = SpectralParameter.tempered([5.0, 2.0])
    assert beta_tilde(O52, lam) == pytest.approx(5_324_000.0, rel=1e-14)


def test_beta_tilde_trivial_cases():
    assert beta_tilde(O52, SpectralParameter([0.0, 0.0])) == 1.0
    full = SimpleRootSubset.full(O52)
    assert beta_tilde(O52, SpectralParameter.tempered([5.0, 2.0]), full) == 1.0
    assert delta_exponent(O52) == 8
    assert delta_exponent(O52, full) == 0


def test_sigma_generated():
    # simple roots of B_2: e1 - e2 and e2; the first alone generates only e1 - e2
    sig = SimpleRootSubset(frozenset({0}))
    lam = SpectralParameter.tempered([5.0, 2.0])
    assert beta_tilde(O52, lam, sig) == pytest.approx(8 * 11 ** 3 * 5 ** 3)
    assert delta_exponent(O52, sig) == 7


def test_c_function_o31_against_mpmath():
    lam = SpectralParameter.tempered([10.0])
    ref = complex(_mp_factor(10j, 2, 0))
    assert c_function(O31, lam) == pytest.approx(ref, rel=1e-12)
    # closed form: c = 1 / (2 z), z = 10 i
    assert c_function(O31, lam) == pytest.approx(1 / (20j), rel=1e-12)


@pytest.mark.parametrize("system,mults", [(U21, [(2, 1)]), (O41, [(3, 0)])])
def test_c_function_rank_one_against_mpmath(system, mults):
    for t in (0.7, 3.0, 25.0):
        ref = complex(_mp_factor(1j * t / 1.0, *mults[0]))
        assert c_function(system, SpectralParameter.tempered([t])) == pytest.approx(ref, rel=1e-11)


def test_c_function_rank_two_against_mpmath():
    x = np.array([7.0, 3.0])
    ref = mpmath.mpf(1)
    for alpha in U32.indivisible_roots():
        a = np.array(alpha, dtype=float)
        z = 1j * (x @ a) / (a @ a)
        ref *= _mp_factor(z, U32.multiplicity(alpha), U32.double_multiplicity(alpha))
    assert c_function(U32, 1j * x) == pytest.approx(complex(ref), rel=1e-11)


def test_o31_density_exact():
    for t in (0.5, 2.0, 13.0, 150.0):
        assert beta(O31, [1j * t]) == pytest.approx((2 * t) ** 2, rel=1e-11)


def test_o31_asymptotic_ratio():
    t = 400.0
    assert beta(O31, [2j * t]) / beta(O31, [1j * t]) == pytest.approx(4.0, rel=1e-10)


@pytest.mark.parametrize("system", [O31, O41, O52, U21, U32])
def test_wall_safe_route_agrees(system):
    rng = np.random.default_rng(3)
    for x in rng.uniform(0.3, 40.0, (10, system.rank)):
        assert plancherel_density(system, x) == pytest.approx(beta(system, 1j * x), rel=1e-10)


def test_density_vanishes_on_walls():
    assert plancherel_density(O52, [3.0, 3.0]) == 0.0
    assert plancherel_density(O31, [0.0]) == 0.0


def test_singularity_error():
    with pytest.raises(SingularityError) as err:
        beta(O31, [0j])
    assert err.value.root == (1,)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 60), st.floats(0.1, 60))
def test_beta_weyl_invariant(x1, x2):
    x = np.array([x1, x2])
    base = plancherel_density(O52, x)
    for w in weyl_group(2):
        assert plancherel_density(O52, w.act(x)) == pytest.approx(base, rel=1e-12)
        assert beta_tilde(O52, 1j * w.act(x)) == pytest.approx(beta_tilde(O52, 1j * x), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-60, 60), min_size=4, max_size=4))
def test_shift_bound(v):
    lam, nu = 1j * np.array(v[:2]), 1j * np.array(v[2:])
    lhs, rhs, ok = shift_bound_check(O52, lam, nu)
    assert ok, (lhs, rhs)


def test_shift_bound_edge_cases():
    nu = SpectralParameter.tempered([4.0, 1.5])
    lhs, rhs, ok = shift_bound_check(O52, SpectralParameter([0.0, 0.0]), nu)
    assert ok and lhs == rhs
    lam = SpectralParameter.tempered([4.0, 1.5])
    lhs, rhs, ok = shift_bound_check(U32, lam, SpectralParameter([0.0, 0.0]))
    assert ok and rhs == pytest.approx((1 + 2 * lam.norm()) ** delta_exponent(U32))


def test_integrate_ball_volume():
    for rank, vol in ((1, 2.0), (2, math.pi), (3, 4 * math.pi / 3)):
        assert integrate_ball(lambda p: np.ones(len(p)), np.zeros(rank), 1.0, rank) == pytest.approx(vol, rel=1e-12)


def test_ball_integral_shrinks():
    vals = [ball_integral(O41, [10j], c) for c in (1.0, 0.1, 0.01)]
    assert vals[0] > vals[1] > vals[2] > 0
    # ~ 2 c beta(nu) for small c
    assert vals[2] / (0.02 * beta(O41, [10j])) == pytest.approx(1.0, rel=1e-3)


def test_ball_integral_weyl_invariant():
    a = ball_integral(O52, [12j, 5j], 1.0)
    b = ball_integral(O52, [-5j, 12j], 1.0)
    assert a == pytest.approx(b, rel=1e-6)


def test_ball_integral_band_o41():
    r = [ball_integral(O41, [1j * t], 1.0) / beta_tilde(O41, [1j * t]) for t in (5, 10, 20, 50)]
    assert max(r) / min(r) == pytest.approx(1.2309537, rel=1e-4)


def test_ball_integral_budget():
    with pytest.raises(QuadratureError):
        ball_integral(O52, [20j, 8j], 1.0, rtol=1e-15, max_samples=2000)


def test_density_grid_csv():
    g = density_grid(O41, [10j], 1.0, 3)
    text = g.to_csv().splitlines()
    assert text[0] == "lambda_coords,beta,beta_tilde"
    assert len(text) == 4
    assert text[2].startswith("10.000000i,")
    g2 = density_grid(O52, [8j, 3j], 1.0, 5)
    assert all(b > 0 for _, b, _ in g2.values)


def test_eqreg_regular_ray_sp():
    # C_m system: beta/beta_tilde tends to a constant on a regular ray
    s = build_root_system(symplectic_split(2))
    d = np.array([2.0, 1.0])
    r = [plancherel_density(s, t * d) / beta_tilde(s, 1j * t * d) for t in (50.0, 100.0, 200.0)]
    assert max(r) / min(r) < 1.1
