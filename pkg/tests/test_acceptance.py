"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import json

import pytest

from thetabounds import acceptance
from thetabounds.config import RunConfig

CFG = RunConfig()


def _check(result, log):
    line = result.line()
    print(line)
    log.append(line)
    return result


def test_criterion_1_order_oracle(acceptance_log):
    r = _check(acceptance.criterion_1(CFG), acceptance_log)
    assert all(c["match"] for c in r.details["cases"])
    assert r.passed


def test_criterion_2_level_scaling(acceptance_log):
    r = _check(acceptance.criterion_2(CFG), acceptance_log)
    assert r.details["checked"] > 0
    assert r.passed, r.details["failures"]


def test_criterion_3_e_exponent(acceptance_log):
    r = _check(acceptance.criterion_3(CFG), acceptance_log)
    assert str(r.details["E_orth_5_1"]) == "3/10" and str(r.details["E_unit_3_1"]) == "1/3"
    assert r.passed


def test_criterion_4_dimension_identity(acceptance_log):
    r = _check(acceptance.criterion_4(CFG), acceptance_log)
    assert r.passed, r.details["failures"]


def test_criterion_5_test_function(acceptance_log):
    r = _check(acceptance.criterion_5(CFG), acceptance_log)
    assert r.details["nonneg_ok"] and r.details["floor_ok"] and r.details["decay_ok"]
    assert r.passed


def test_criterion_6_identity_band(acceptance_log):
    r = _check(acceptance.criterion_6(CFG), acceptance_log)
    for label, part in r.details.items():
        print(f"  {label}: band {part['band']:.4g} (limit {acceptance.BAND_MAX:g})")
    assert r.details["rank1 O(4,1)"]["pass"]
    assert r.details["rank2 O(5,2)"]["pass"], "rank-2 band exceeds the limit at bump radius 1"
    assert r.passed


def test_criterion_7_density_bands(acceptance_log):
    r = _check(acceptance.criterion_7(CFG), acceptance_log)
    assert r.details["shift_violations"] == 0
    assert r.passed


def test_criterion_8_theta(acceptance_log):
    r = _check(acceptance.criterion_8(CFG), acceptance_log)
    assert r.details["witness_4_2_1"] == "5/2"
    assert r.passed


@pytest.mark.slow
def test_criterion_9_determinism(acceptance_log):
    r = _check(acceptance.criterion_9(CFG), acceptance_log)
    assert r.passed


def test_report_render_is_stable():
    results = [acceptance.criterion_2(CFG), acceptance.criterion_4(CFG)]
    a, b = acceptance.render(results), acceptance.render(results)
    assert a == b and json.loads(a)["all_passed"]
    assert acceptance.render(results, "csv").splitlines()[0] == "criterion,title,verdict"
