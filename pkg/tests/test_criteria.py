"""Reid and entropic steering criteria."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvsteer.criteria import (
    ENTROPIC_BOUND,
    REID_BOUND,
    Criterion,
    Quadrature,
    SteeringDirection,
    entropic_sum,
    is_steerable,
    reid_estimate,
    reid_inferred_variance,
    reid_product,
)
from cvsteer.states import TwoModeGaussianState, make_tmsv, vacuum


def test_bound_constants():
    assert REID_BOUND == 0.25
    assert ENTROPIC_BOUND == pytest.approx(1.0 + math.log(math.pi))


def test_vacuum_is_not_steerable():
    v = vacuum()
    for direction in SteeringDirection:
        steerable, margin = is_steerable(v, direction)
        assert not steerable
        assert margin == pytest.approx(0.0)
        assert reid_product(v, direction) == pytest.approx(0.25)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_tmsv_inferred_variance_closed_form(r):
    s = make_tmsv(r)
    expected = 0.5 / math.cosh(2 * r)
    for direction in SteeringDirection:
        for quad in Quadrature:
            assert reid_inferred_variance(s, direction, quad) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
def test_tmsv_reid_product_closed_form(r):
    expected = 1.0 / (4.0 * math.cosh(2 * r) ** 2)
    for direction in SteeringDirection:
        assert reid_product(make_tmsv(r), direction) == pytest.approx(expected, rel=1e-12)


def test_reid_estimate_slope_and_offset():
    r = 0.5
    s = make_tmsv(r)
    est = reid_estimate(s, SteeringDirection.A_TO_B, Quadrature.Q)
    assert est.lam == pytest.approx(-math.tanh(2 * r))
    assert est.d == 0.0
    est_p = reid_estimate(s, SteeringDirection.A_TO_B, Quadrature.P)
    assert est_p.lam == pytest.approx(math.tanh(2 * r))
    displaced = TwoModeGaussianState([1.0, 0.0, 2.0, 0.0], s.cm)
    est_d = reid_estimate(displaced, SteeringDirection.A_TO_B, Quadrature.Q)
    assert est_d.d == pytest.approx((est_d.lam * 1.0 + 2.0) / math.sqrt(2.0))


def test_entropic_sum_from_inferred_variances():
    s = make_tmsv(0.8)
    var = reid_inferred_variance(s, SteeringDirection.A_TO_B, Quadrature.Q)
    expected = 2.0 * 0.5 * math.log(2.0 * math.pi * math.e * var)
    assert entropic_sum(s, SteeringDirection.A_TO_B) == pytest.approx(expected, rel=1e-12)


def test_steerable_tmsv_under_both_criteria():
    s = make_tmsv(0.5)
    for criterion in Criterion:
        steerable, margin = is_steerable(s, SteeringDirection.A_TO_B, criterion)
        assert steerable
        assert margin < 0.0


def test_margin_sign_convention():
    # Negative margin means steerable; the vacuum sits exactly on neither side.
    steerable, margin = is_steerable(make_tmsv(1.0), SteeringDirection.B_TO_A)
    assert steerable and margin < 0
    product_state = TwoModeGaussianState(np.zeros(4), np.diag([2.0, 2.0, 3.0, 3.0]))
    steerable, margin = is_steerable(product_state, SteeringDirection.A_TO_B)
    assert not steerable and margin > 0


@given(r=st.floats(0.01, 1.5), direction=st.sampled_from(list(SteeringDirection)))
@settings(max_examples=50, deadline=None)
def test_criteria_verdicts_agree_on_tmsv_family(r, direction):
    s = make_tmsv(r)
    reid_verdict, _ = is_steerable(s, direction, Criterion.REID)
    entropic_verdict, _ = is_steerable(s, direction, Criterion.ENTROPIC)
    assert reid_verdict == entropic_verdict
