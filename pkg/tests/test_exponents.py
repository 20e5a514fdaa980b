import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetabounds.exponents import (
    Case,
    ConfigurationCase,
    ConfigurationError,
    e_exponent,
    exponent_report,
    hybrid_bound_report,
    index_ratio,
    measured_slope,
    nontriviality,
    slopes,
    volume_exponents,
)

ORTH, UNIT = Case.ORTHOGONAL, Case.UNITARY


def test_volume_exponents():
    assert volume_exponents(ConfigurationCase(5, 1, ORTH)) == (5, 3)
    assert volume_exponents(ConfigurationCase(3, 1, UNIT)) == (6, 4)
    assert volume_exponents(ConfigurationCase(3, 1, ORTH)) == (3, 3)


def test_e_exponent_values():
    assert e_exponent(ConfigurationCase(5, 1, ORTH)) == Fraction(3, 10)
    assert e_exponent(ConfigurationCase(3, 1, UNIT)) == Fraction(1, 3)
    assert e_exponent(ConfigurationCase(2, 1, UNIT, relaxed=True)) == Fraction(1, 2)


def test_nontriviality_examples():
    assert nontriviality(ConfigurationCase(5, 1, ORTH))
    assert not nontriviality(ConfigurationCase(4, 2, UNIT))
    assert nontriviality(ConfigurationCase(7, 1, UNIT))


def test_configuration_validation():
    with pytest.raises(ConfigurationError):
        ConfigurationCase(2, 2, ORTH)
    with pytest.raises(ConfigurationError):
        ConfigurationCase(4, 1, ORTH)
    with pytest.raises(ConfigurationError):
        ConfigurationCase(2, 1, UNIT)
    ConfigurationCase(2, 1, UNIT, relaxed=True)


@st.composite
def configs(draw):
    N = draw(st.integers(2, 20)) * 2
    m = draw(st.integers(1, N // 2 - 1))
    n = N - m
    return ConfigurationCase(n, m, draw(st.sampled_from(list(Case))))


@settings(max_examples=200, deadline=None)
@given(configs())
def test_nontriviality_iff_e_below_half(cfg):
    E = e_exponent(cfg)
    assert 0 < E < 1
    assert nontriviality(cfg) == (E < Fraction(1, 2))


@settings(max_examples=30, deadline=None)
@given(configs(), st.sampled_from([3, 5, 7]))
def test_slopes_exact(cfg, q):
    a, b = volume_exponents(cfg)
    assert all(s == a - b for s in slopes(cfg, q, 4))


def test_measured_slope_examples():
    assert measured_slope(ConfigurationCase(5, 1, ORTH), 3, 3) == 2
    assert measured_slope(ConfigurationCase(3, 1, UNIT), 3, 3) == 2
    assert measured_slope(ConfigurationCase(3, 1, ORTH), 3, 3) == 0
    with pytest.raises(ValueError):
        measured_slope(ConfigurationCase(5, 1, ORTH), 9, 3)
    with pytest.raises(ValueError):
        measured_slope(ConfigurationCase(5, 1, ORTH), 3, 7)


def test_index_ratio_non_split_types():
    cfg = ConfigurationCase(5, 3, ORTH)
    split = index_ratio(cfg, 3, 2)
    mixed = index_ratio(cfg, 3, 2, eps=(1, 0, 0))
    assert split == mixed  # n, m odd: only the ambient type matters
    assert index_ratio(ConfigurationCase(4, 2, ORTH), 3, 2, eps=(1, -1, 1)) != index_ratio(ConfigurationCase(4, 2, ORTH), 3, 2)


def test_hybrid_report_regression():
    rep = hybrid_bound_report(ConfigurationCase(5, 1, ORTH), [20j], 3 ** 4, q=3)
    h = rep.hybrid
    assert h.vol_ratio_sqrt == 81.0
    assert h.log_factor == pytest.approx((math.log(81 * 21)) ** -0.5, rel=1e-14)
    assert h.beta_ratio_sqrt == pytest.approx(358.2178108, rel=1e-8)
    assert h.bound() == pytest.approx(10638.386, rel=1e-6)
    assert rep.measured_slope == 2
    assert h.density_source == "beta"


def test_hybrid_report_degenerate():
    rep = hybrid_bound_report(ConfigurationCase(5, 1, ORTH), [0j], 1)
    assert rep.hybrid.degenerate_log
    assert rep.hybrid.bound() is None
    assert "degenerate" in rep.hybrid_factors_str()


def test_hybrid_beta_ratio_grows_rank_one():
    vals = [hybrid_bound_report(ConfigurationCase(n, 1, ORTH, relaxed=True), [200j], 1).hybrid.beta_ratio_sqrt
            for n in (4, 5, 7)]
    assert 1 < vals[0] < vals[1] < vals[2]


def test_hybrid_rank_three_uses_majorant():
    rep = hybrid_bound_report(ConfigurationCase(5, 3, ORTH), [20j, 9j, 3j], 1)
    assert rep.hybrid.density_source == "beta_tilde"
    assert any("majorant" in note for note in rep.notes)


def test_exponent_report():
    rep = exponent_report(ConfigurationCase(3, 1, UNIT), q=3)
    assert rep.E == Fraction(1, 3) and rep.nontrivial and rep.measured_slope == 2
