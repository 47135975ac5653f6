"""Verification suites: everything shipped passes; failures carry payloads."""

import pytest

from dynoscale.metric_core.checks import CheckResult, FAIL
from dynoscale.verify import VerificationReport, run_suite

FAST_SUITES = ["chain", "subadditivity", "power", "product", "nonwandering",
               "shift-bounds", "quantization-bounds"]


@pytest.mark.parametrize("name", FAST_SUITES)
def test_suite_passes(name):
    report = run_suite(name, seed=0)
    assert report.passed, report.failures()
    assert report.counts()["pass"] > 0


def test_sampled_suites_pass_with_reduced_instance_counts():
    from dynoscale.verify import transport_floor_suite, domination_suite
    assert transport_floor_suite(seed=1, instances=40).passed
    assert domination_suite(seed=1, pairs=25).passed


def test_unknown_suite_rejected():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")


def test_failures_carry_replayable_payload():
    report = VerificationReport("demo")
    report.checks.append(CheckResult("demo-check", FAIL,
                                     {"system": "x", "n": 2, "eps": 0.5}))
    assert not report.passed
    failure = report.failures()[0]
    assert {"system", "n", "eps"} <= set(failure.detail)
