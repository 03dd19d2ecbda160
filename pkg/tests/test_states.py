"""State construction, characteristic function and symplectic spectrum."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvsteer.errors import InvalidArgumentError, UnphysicalStateError
from cvsteer.states import (
    SYMPLECTIC_FORM,
    CfPoint,
    ModeLabel,
    TwoModeGaussianState,
    cf_eval,
    make_tmsv,
    partial_transpose,
    symplectic_eigenvalues,
    vacuum,
)


def test_symplectic_form_shape():
    j = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert np.array_equal(SYMPLECTIC_FORM, np.kron(np.eye(2), j))
    assert not SYMPLECTIC_FORM.flags.writeable


def test_vacuum_is_identity():
    v = vacuum()
    assert np.array_equal(v.cm, np.eye(4))
    assert np.array_equal(v.mean, np.zeros(4))
    assert symplectic_eigenvalues(v.cm) == (1.0, 1.0)


def test_tmsv_matrix_entries():
    r = 0.7
    s = make_tmsv(r)
    ch, sh = math.cosh(2 * r), math.sinh(2 * r)
    assert s.cm[0, 0] == pytest.approx(ch)
    assert s.cm[0, 2] == pytest.approx(sh)
    assert s.cm[1, 3] == pytest.approx(-sh)
    assert s.cm[0, 1] == 0.0


@pytest.mark.parametrize("r", [0.0, 0.1, 0.5, 1.0, 2.0])
def test_tmsv_is_pure(r):
    nu1, nu2 = symplectic_eigenvalues(make_tmsv(r).cm)
    assert nu1 == pytest.approx(1.0, abs=1e-6)
    assert nu2 == pytest.approx(1.0, abs=1e-6)


def test_tmsv_rejects_bad_squeezing():
    with pytest.raises(InvalidArgumentError):
        make_tmsv(-0.1)
    with pytest.raises(InvalidArgumentError):
        make_tmsv(float("nan"))


def test_state_validation_rejects_garbage():
    with pytest.raises(InvalidArgumentError):
        TwoModeGaussianState(np.zeros(3), np.eye(4))
    with pytest.raises(InvalidArgumentError):
        TwoModeGaussianState(np.zeros(4), np.eye(3))
    with pytest.raises(UnphysicalStateError):
        TwoModeGaussianState(np.zeros(4), 0.5 * np.eye(4))  # below vacuum noise
    lopsided = np.eye(4)
    lopsided[0, 1] = 1e-3
    with pytest.raises(UnphysicalStateError):
        TwoModeGaussianState(np.zeros(4), lopsided)


def test_state_is_immutable():
    s = vacuum()
    with pytest.raises(AttributeError):
        s.mean = np.ones(4)
    assert not s.cm.flags.writeable


def test_blocks_and_swap():
    s = make_tmsv(0.4)
    assert np.array_equal(s.block(ModeLabel.A), s.cm[:2, :2])
    assert np.array_equal(s.cross_block, s.cm[:2, 2:])
    sw = s.swapped()
    assert np.array_equal(sw.cm, s.cm)  # TMSV is exchange symmetric
    displaced = TwoModeGaussianState([1.0, 2.0, 3.0, 4.0], s.cm)
    assert np.array_equal(displaced.swapped().mean, [3.0, 4.0, 1.0, 2.0])


def test_cf_at_origin_is_one():
    assert cf_eval(make_tmsv(0.9), CfPoint(0, 0, 0, 0)) == 1.0 + 0.0j


def test_cf_matches_quadratic_form():
    r = 0.6
    s = make_tmsv(r)
    q1, q2 = 0.3, -0.4
    p1, p2 = 0.2, 0.5
    # Direct expansion of the exponent for the exchange-symmetric state.
    ch, sh = math.cosh(2 * r), math.sinh(2 * r)
    exponent = -0.5 * ch * (q1**2 + p1**2 + q2**2 + p2**2) + sh * (q1 * q2 - p1 * p2)
    assert cf_eval(s, CfPoint(q1, p1, q2, p2)) == pytest.approx(math.exp(exponent))


def test_cf_with_displacement_is_unimodular_phase():
    s = TwoModeGaussianState([0.5, -0.3, 0.2, 0.1], np.eye(4))
    val = cf_eval(s, CfPoint(0.1, 0.2, 0.3, 0.4))
    zero_mean = cf_eval(vacuum(), CfPoint(0.1, 0.2, 0.3, 0.4))
    assert abs(val) == pytest.approx(abs(zero_mean))
    assert val != zero_mean


@given(
    q1=st.floats(-2, 2), p1=st.floats(-2, 2),
    q2=st.floats(-2, 2), p2=st.floats(-2, 2),
    r=st.floats(0, 1.5),
)
@settings(max_examples=60, deadline=None)
def test_cf_bounded_by_one(q1, p1, q2, p2, r):
    val = cf_eval(make_tmsv(r), CfPoint(q1, p1, q2, p2))
    assert abs(val) <= 1.0 + 1e-12


def test_partial_transpose_flips_momentum_signs():
    s = make_tmsv(0.5)
    pt = partial_transpose(s, ModeLabel.B)
    assert pt[1, 3] == -s.cm[1, 3]
    assert pt[3, 3] == s.cm[3, 3]
    assert pt[0, 2] == s.cm[0, 2]


@given(r=st.floats(0, 1.5))
@settings(max_examples=40, deadline=None)
def test_partial_transpose_is_involutive(r):
    s = make_tmsv(r)
    pt = partial_transpose(s, ModeLabel.B)
    again = pt * np.outer([1, 1, 1, -1], [1, 1, 1, -1])
    assert np.array_equal(again, s.cm)


def test_partial_transpose_detects_tmsv_entanglement():
    r = 0.5
    _, nu2 = symplectic_eigenvalues(partial_transpose(make_tmsv(r), ModeLabel.B))
    assert nu2 == pytest.approx(math.exp(-2 * r), rel=1e-12)


def test_symplectic_eigenvalues_thermal_product_state():
    cm = np.diag([3.0, 3.0, 5.0, 5.0])
    assert symplectic_eigenvalues(cm) == pytest.approx((5.0, 3.0))


def test_symplectic_eigenvalues_rejects_asymmetric():
    m = np.eye(4)
    m[0, 1] = 0.5
    with pytest.raises(InvalidArgumentError):
        symplectic_eigenvalues(m)
