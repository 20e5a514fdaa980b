import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetabounds.density import beta_tilde
from thetabounds.paleywiener import (
    BumpSpec,
    TestFunctionTransform,
    base_transform,
    decay_constant,
    get_base_transform,
    k_at_identity,
    khat,
    khat_ball_minimum,
    local_density_mass,
    symmetrized_transform,
)
from thetabounds.rootsys import SpectralParameter, build_root_system, orthogonal, weyl_group

B2 = build_root_system(orthogonal(5, 2))
O41 = build_root_system(orthogonal(4, 1))
BUMP = BumpSpec()


def _tf(system, nu, bump=BUMP):
    return TestFunctionTransform(bump, SpectralParameter.tempered(nu), system)


def test_bump_spec():
    assert BUMP.base_support_radius == 0.25
    with pytest.raises(ValueError):
        BumpSpec(radius=2.0)
    assert BumpSpec(radius=4.0, radius_cap=8.0).base_support_radius == 1.0


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_normalisation(rank):
    assert base_transform(BUMP, np.zeros(rank)) == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_ray_cache_matches_quadrature(rank):
    bt = get_base_transform(BUMP, rank)
    k = np.array([0.0, 0.3, 7.1, 55.5, 230.2])
    assert np.allclose(bt.tempered(k), bt.tempered_exact(k), rtol=0, atol=1e-12)


def test_h_radial_and_real():
    lam = 1j * np.array([3.0, 4.0])
    assert base_transform(BUMP, lam).imag == pytest.approx(0.0, abs=1e-15)
    assert base_transform(BUMP, lam) == pytest.approx(base_transform(BUMP, 1j * np.array([5.0, 0.0])), rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(-200, 200), st.floats(-200, 200))
def test_h_nonnegative(x, y):
    assert base_transform(BUMP, 1j * np.array([x, y])).real >= 0.0


def test_h_lower_bound_on_unit_ball():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(500, 2))
    pts *= (rng.uniform(0, 1, 500) / np.linalg.norm(pts, axis=1))[:, None]
    vals = base_transform(BUMP, 1j * pts).real
    assert vals.min() >= 9 / 16


@settings(max_examples=40, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-80, 80), st.floats(-80, 80))
def test_paley_wiener_growth(a, b, x, y):
    lam = np.array([a + 1j * x, b + 1j * y])
    t = _tf(B2, [20.0, 8.0])
    bound = len(weyl_group(2)) ** 2 * np.exp(BUMP.radius * np.hypot(a, b))
    assert abs(khat(t, lam)) <= bound * (1 + 1e-12)


def test_khat_weyl_invariant():
    t = _tf(B2, [20.0, 8.0])
    x = 1j * np.array([17.3, -6.1])
    base = khat(t, x)
    for w in weyl_group(2):
        assert khat(t, w.act(x)) == pytest.approx(base, rel=1e-12)


def test_symmetrized_examples():
    t = _tf(O41, [10.0])
    # two Weyl terms, the second far from nu
    v = symmetrized_transform(t, [10j])
    assert v.real == pytest.approx(1.0 + base_transform(BUMP, [-20j]).real, rel=1e-12)
    assert 1.0 <= v.real < 1.0 + 1e-3
    t0 = _tf(B2, [0.0, 0.0])
    assert symmetrized_transform(t0, [0j, 0j]).real == pytest.approx(8.0, rel=1e-12)


def test_khat_floor_near_nu():
    for nu in ([20.0, 8.0], [50.0, 20.0], [30.0, -11.0]):
        assert khat_ball_minimum(_tf(B2, nu), 1.0) >= 0.3


def test_decay_constants_pinned():
    t = _tf(B2, [20.0, 8.0])
    for A, pinned in ((2, 44.30), (4, 5125.6), (8, 1.5697e8)):
        assert decay_constant(t, A) == pytest.approx(pinned, rel=0.2)


def test_non_tempered_center_rejected():
    with pytest.raises(ValueError):
        TestFunctionTransform(BUMP, SpectralParameter([1.0, 2j]), B2)


def test_k_at_identity_rank_one():
    t = _tf(O41, [20.0])
    val = k_at_identity(t)
    assert val.value > 0
    assert val.tail_fraction < 1e-6
    assert val.value / beta_tilde(O41, [20j]) == pytest.approx(13.3379, rel=1e-4)


def test_k_at_identity_lower_bound():
    # k(e) >= (floor) * (ball mass) / |W|, using k_hat >= 0.3 near nu
    for system, nu in ((O41, [20.0]), (B2, [20.0, 8.0])):
        t = _tf(system, nu)
        W = len(weyl_group(system.rank))
        assert k_at_identity(t).value >= 0.3 * local_density_mass(t) / W


def test_k_at_identity_bump_radius():
    t1 = _tf(O41, [20.0])
    t2 = _tf(O41, [20.0], BumpSpec(0.5))
    a, b = k_at_identity(t1).value, k_at_identity(t2).value
    assert a > 0 and b > 0
    assert 0.01 < a / b < 100


def test_k_at_identity_rank_two_converged():
    t = _tf(B2, [50.0, 20.0])
    coarse = k_at_identity(t).value
    fine = k_at_identity(t, panel=1.0, angular_nodes=192).value
    assert fine == pytest.approx(coarse, rel=1e-8)
