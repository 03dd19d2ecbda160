"""Quantitative steerability, logarithmic negativity and threshold times.

Thresholds come in two flavours everywhere: a closed form evaluated from the
channel parameters, and a bracketing + bisection root of the exact
covariance-matrix-level condition.  The bisected value is authoritative; the
closed forms are verified against it (this protects against branch and sign
choices in the quadratic threshold expressions when coefficients change sign
across parameter space).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .channels import ChannelSide, ChannelSpec
from .criteria import SteeringDirection, reid_product
from .errors import DegenerateInputError, InvalidArgumentError, MultiRootError
from .states import ModeLabel, TwoModeGaussianState, make_tmsv, partial_transpose, symplectic_eigenvalues

__all__ = [
    "SteeringReport",
    "ThresholdResult",
    "INFINITE_THRESHOLD",
    "gaussian_steerability",
    "steerability_exponent",
    "log_negativity",
    "log_negativity_exponent",
    "numeric_threshold",
    "two_way_laser_threshold",
    "two_way_thermal_threshold",
    "one_side_thresholds",
    "inseparability_threshold",
    "steering_report",
]

# Typed sentinel for a quantity that never decays; serialized as the string
# "inf", never as a float, in CLI output.
INFINITE_THRESHOLD = math.inf

# Rates close enough to kappa = g that Omega-based closed forms are replaced
# by their analytic limits.
_RATE_DEGENERACY_TOL = 1e-12

# Signed quantities smaller in magnitude than this are indistinguishable from
# rounding noise during the bracketing scan.  The steerability exponent comes
# from a well-conditioned Schur complement; the entanglement exponent takes a
# square root of a near-cancelling discriminant, which amplifies rounding
# error of order eps to sqrt(eps) ~ 1e-8 when the eigenvalue sits near 1.
_SIGN_NOISE_FLOOR = {"G_AtoB": 1e-13, "G_BtoA": 1e-13, "G_twoway": 1e-13, "E_N": 1e-7}


def _det2(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def _conditional_block(state: TwoModeGaussianState, direction: SteeringDirection) -> np.ndarray:
    """Schur complement of the steering party's block: the steered party's
    covariance conditioned on the steerer's optimal Gaussian measurement."""
    a = state.block(ModeLabel.A)
    b = state.block(ModeLabel.B)
    c = state.cross_block
    if direction is SteeringDirection.A_TO_B:
        det_a = _det2(a)
        if det_a <= 0.0:
            raise DegenerateInputError("steering party block is singular")
        a_inv = np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]]) / det_a
        return b - c.T @ a_inv @ c
    det_b = _det2(b)
    if det_b <= 0.0:
        raise DegenerateInputError("steering party block is singular")
    b_inv = np.array([[b[1, 1], -b[0, 1]], [-b[1, 0], b[0, 0]]]) / det_b
    return a - c @ b_inv @ c.T


def steerability_exponent(state: TwoModeGaussianState, direction: SteeringDirection) -> float:
    """Unclamped steerability (1/2) ln(det steering-block / det full CM).

    Positive iff the state is steerable in ``direction``; the clamped
    quantifier is ``max(0, .)`` of this.  Computed as -(1/2) ln det of the
    2x2 conditional block, using closed-form 2x2 determinants for precision
    near the boundary.
    """
    det_cond = _det2(_conditional_block(state, direction))
    if det_cond <= 0.0:
        raise DegenerateInputError("conditional covariance is singular")
    return -0.5 * math.log(det_cond)


def gaussian_steerability(state: TwoModeGaussianState, direction: SteeringDirection) -> float:
    """Gaussian steerability quantifier, >= 0; zero iff not steerable."""
    return max(0.0, steerability_exponent(state, direction))


def log_negativity_exponent(state: TwoModeGaussianState) -> float:
    """Unclamped -ln(nu_s) of the partial transpose; positive iff entangled."""
    _, nu_s = symplectic_eigenvalues(partial_transpose(state, ModeLabel.B))
    return -math.log(nu_s)


def log_negativity(state: TwoModeGaussianState) -> float:
    """Logarithmic negativity E_N = max(0, -ln nu_s), an entanglement monotone."""
    return max(0.0, log_negativity_exponent(state))


@dataclass(frozen=True)
class SteeringReport:
    """All steering/entanglement quantities of one state, with verdicts."""

    reid_a_to_b: float
    reid_b_to_a: float
    entropic_a_to_b: float
    entropic_b_to_a: float
    g_a_to_b: float
    g_b_to_a: float
    e_n: float
    steerable_a_to_b: bool
    steerable_b_to_a: bool
    entangled: bool

    def as_dict(self) -> dict:
        return {
            "reid": {"a_to_b": self.reid_a_to_b, "b_to_a": self.reid_b_to_a},
            "entropic": {"a_to_b": self.entropic_a_to_b, "b_to_a": self.entropic_b_to_a},
            "steerability": {"a_to_b": self.g_a_to_b, "b_to_a": self.g_b_to_a},
            "log_negativity": self.e_n,
            "verdicts": {
                "steerable_a_to_b": self.steerable_a_to_b,
                "steerable_b_to_a": self.steerable_b_to_a,
                "entangled": self.entangled,
            },
        }


def steering_report(state: TwoModeGaussianState) -> SteeringReport:
    """Evaluate every criterion and quantifier on one state.

    Verdicts derive from the steerability quantifier; for the channel-family
    states treated here (diagonal-block covariances) its boundary coincides
    with the Reid product crossing 1/4 and the entropic sum crossing
    ln(e*pi).  Steerability in either direction implies entanglement.
    """
    from .criteria import entropic_sum  # local import avoids cycle at module load

    g_ab = gaussian_steerability(state, SteeringDirection.A_TO_B)
    g_ba = gaussian_steerability(state, SteeringDirection.B_TO_A)
    e_n = log_negativity(state)
    return SteeringReport(
        reid_a_to_b=reid_product(state, SteeringDirection.A_TO_B),
        reid_b_to_a=reid_product(state, SteeringDirection.B_TO_A),
        entropic_a_to_b=entropic_sum(state, SteeringDirection.A_TO_B),
        entropic_b_to_a=entropic_sum(state, SteeringDirection.B_TO_A),
        g_a_to_b=g_ab,
        g_b_to_a=g_ba,
        e_n=e_n,
        steerable_a_to_b=g_ab > 0.0,
        steerable_b_to_a=g_ba > 0.0,
        entangled=e_n > 0.0,
    )


@dataclass(frozen=True)
class ThresholdResult:
    """Closed-form and bisected threshold times for one channel/quantity."""

    channel: dict
    direction: str
    t_closed: float
    t_numeric: float
    status: str = "ok"

    @property
    def agreement(self) -> float:
        if math.isinf(self.t_closed) and math.isinf(self.t_numeric):
            return 0.0
        return abs(self.t_closed - self.t_numeric)

    def as_dict(self) -> dict:
        fmt = lambda v: "inf" if math.isinf(v) else v
        return {
            "channel": self.channel,
            "direction": self.direction,
            "t_closed": fmt(self.t_closed),
            "t_numeric": fmt(self.t_numeric),
            "agreement": fmt(self.agreement),
            "status": self.status,
        }


_QUANTITIES = ("G_AtoB", "G_BtoA", "G_twoway", "E_N")


def _signed_quantity(channel: ChannelSpec, r: float, quantity: str):
    state0 = make_tmsv(r)

    def f(t: float) -> float:
        state = channel.evolve(state0, t)
        if quantity == "G_AtoB":
            return steerability_exponent(state, SteeringDirection.A_TO_B)
        if quantity == "G_BtoA":
            return steerability_exponent(state, SteeringDirection.B_TO_A)
        if quantity == "G_twoway":
            return min(
                steerability_exponent(state, SteeringDirection.A_TO_B),
                steerability_exponent(state, SteeringDirection.B_TO_A),
            )
        return log_negativity_exponent(state)

    return f


def numeric_threshold(channel: ChannelSpec, r: float, quantity: str, t_max: float) -> float:
    """Smallest t in (0, t_max] where the signed quantity hits zero.

    Returns the infinite sentinel when the quantity stays positive on the
    whole interval.  A non-monotone sign pattern (several crossings) raises
    MultiRootError carrying every bracket found.
    """
    if quantity not in _QUANTITIES:
        raise InvalidArgumentError(f"unknown quantity {quantity!r}; expected one of {_QUANTITIES}")
    if not (t_max > 0.0 and math.isfinite(t_max)):
        raise InvalidArgumentError(f"t_max must be finite and > 0, got {t_max}")
    f = _signed_quantity(channel, r, quantity)
    if f(0.0) <= 0.0:
        raise InvalidArgumentError(f"{quantity} must be positive at t = 0")
    # Geometric head resolves thresholds far below t_max; linear tail covers
    # the rest of the interval.
    ts = np.unique(
        np.concatenate(
            [
                np.geomspace(t_max * 1e-9, t_max, 400),
                np.linspace(t_max / 400, t_max, 400),
            ]
        )
    )
    values = np.array([f(t) for t in ts])
    # Quantities that decay towards zero without crossing it jitter at the
    # rounding level for large t; values inside the noise band carry no sign.
    signs = np.where(np.abs(values) <= _SIGN_NOISE_FLOOR[quantity], 0.0, np.sign(values))
    brackets = []
    prev_t, prev_s = 0.0, 1.0
    for t, s in zip(ts, signs):
        if s == 0.0:
            continue
        if s != prev_s:
            brackets.append((prev_t, t))
        prev_t, prev_s = t, s
    if not brackets:
        return INFINITE_THRESHOLD
    if len(brackets) > 1:
        raise MultiRootError(
            f"{quantity} changes sign {len(brackets)} times in (0, {t_max}]", brackets
        )
    lo, hi = brackets[0]
    if lo == 0.0:
        lo = ts[0] * 0.5
        if f(lo) <= 0.0:
            lo = 0.0  # root essentially at the origin; brentq still needs f(lo) > 0
    return float(brentq(f, lo, hi, xtol=1e-15, rtol=1e-12))


def _default_rate(g: float, kappa: float) -> float:
    rate = g + kappa
    if rate <= 0.0:
        raise InvalidArgumentError("g and kappa cannot both be zero")
    return rate


def _bisect_or_inf(channel: ChannelSpec, r: float, quantity: str, t_scale: float) -> float:
    return numeric_threshold(channel, r, quantity, t_max=50.0 * t_scale)


def two_way_laser_threshold(g: float, kappa: float, r: float, *, bisect: bool = True) -> ThresholdResult:
    """Two-way steering threshold of the TMSV under the two-side laser channel.

    Closed form: the positive root of the quadratic steerability condition in
    the added-noise coefficient, mapped back to time.  Degenerates at
    kappa = g, where the analytic limit in the noise coefficient is used.
    """
    _check_threshold_args(g, kappa, r)
    ch, sh2 = math.cosh(2.0 * r), 2.0 * math.sinh(r) ** 2
    if abs(kappa - g) <= _RATE_DEGENERACY_TOL * (kappa + g):
        # Omega -> infinity; the condition reduces to A^2 + (2 cosh2r - 1) A = 2 sinh^2 r
        # with A = 2 (kappa + g) t.
        b_lim = 2.0 * ch - 1.0
        a_star = 0.5 * (-b_lim + math.sqrt(b_lim * b_lim + 4.0 * sh2))
        t_closed = a_star / (2.0 * (kappa + g))
    else:
        omega = (kappa + g) / (kappa - g)
        a = (omega * omega + 1.0 - 2.0 * omega * ch) / omega**2
        b = (2.0 * omega * ch + ch - 2.0 - omega) / omega
        c = sh2
        arg = 1.0 + (b - math.sqrt(b * b + 4.0 * a * c)) / (2.0 * omega * a)
        t_closed = math.log(1.0 / arg) / (2.0 * (kappa - g))
    channel = ChannelSpec(kind="laser", side=ChannelSide.BOTH, g=g, kappa=kappa)
    if not bisect:
        return ThresholdResult(channel.describe(), "two-way", t_closed, math.nan, status="closed-form-only")
    t_numeric = _bisect_or_inf(channel, r, "G_twoway", 1.0 / _default_rate(g, kappa))
    return ThresholdResult(channel.describe(), "two-way", t_closed, t_numeric)


def two_way_thermal_threshold(nbar: float, r: float, *, bisect: bool = True) -> ThresholdResult:
    """Two-way steering threshold (in units of 1/kappa) under the two-side
    thermal channel.

    The closed form holds for 0 <= nbar < (e^{2r} - 1)/2; outside that window
    the threshold is reported as zero with status "never-steerable".
    """
    if not np.isfinite(nbar) or nbar < 0:
        raise InvalidArgumentError(f"nbar must be finite and >= 0, got {nbar}")
    if not (np.isfinite(r) and r > 0):
        raise InvalidArgumentError(f"r must be finite and > 0, got {r}")
    channel = ChannelSpec(kind="thermal", side=ChannelSide.BOTH, kappa=1.0, nbar=nbar)
    if nbar >= 0.5 * math.expm1(2.0 * r):
        return ThresholdResult(channel.describe(), "two-way", 0.0, 0.0, status="never-steerable")
    n = 2.0 * nbar + 1.0
    alpha = (n + 1.0) ** 2 - 4.0 * n * math.cosh(r) ** 2
    beta = (2.0 * n - 1.0) * (math.cosh(2.0 * r) - n)
    delta = n * (n - 1.0)
    t_closed = 0.5 * math.log(
        2.0 * abs(alpha) / (beta + math.sqrt(beta * beta + 4.0 * abs(alpha) * delta))
    )
    if not bisect:
        return ThresholdResult(channel.describe(), "two-way", t_closed, math.nan, status="closed-form-only")
    t_numeric = _bisect_or_inf(channel, r, "G_twoway", 1.0)
    return ThresholdResult(channel.describe(), "two-way", t_closed, t_numeric)


def one_side_thresholds(g: float, kappa: float, r: float, *, bisect: bool = True) -> tuple[ThresholdResult, ThresholdResult]:
    """Steering thresholds (t_AtoB, t_BtoA) when only mode B passes the laser channel.

    Closed forms:
        t_AtoB = ln[(kappa sinh^2 r + g cosh^2 r) / (g cosh 2r)] / (2 (kappa - g))
        t_BtoA = ln[2 kappa / (kappa + g)] / (2 (kappa - g))
    with the pure-loss (g = 0) A->B threshold infinite, the pure-gain
    (kappa = 0) B->A threshold infinite, and analytic limits at kappa = g.
    """
    _check_threshold_args(g, kappa, r)
    ch = math.cosh(2.0 * r)
    sh_sq, ch_sq = math.sinh(r) ** 2, math.cosh(r) ** 2
    degenerate = abs(kappa - g) <= _RATE_DEGENERACY_TOL * (kappa + g)
    if g == 0.0:
        t_ab = INFINITE_THRESHOLD
    elif degenerate:
        t_ab = sh_sq / (2.0 * kappa * ch)
    else:
        t_ab = math.log((kappa * sh_sq + g * ch_sq) / (g * ch)) / (2.0 * (kappa - g))
    if kappa == 0.0:
        t_ba = INFINITE_THRESHOLD
    elif degenerate:
        t_ba = 1.0 / (4.0 * kappa)
    else:
        t_ba = math.log(2.0 * kappa / (kappa + g)) / (2.0 * (kappa - g))
    channel = ChannelSpec(kind="laser", side=ChannelSide.B, g=g, kappa=kappa)
    desc = channel.describe()
    if not bisect:
        return (
            ThresholdResult(desc, "a_to_b", t_ab, math.nan, status="closed-form-only"),
            ThresholdResult(desc, "b_to_a", t_ba, math.nan, status="closed-form-only"),
        )
    scale = 1.0 / _default_rate(g, kappa)
    num_ab = _bisect_or_inf(channel, r, "G_AtoB", scale)
    num_ba = _bisect_or_inf(channel, r, "G_BtoA", scale)
    return (
        ThresholdResult(desc, "a_to_b", t_ab, num_ab),
        ThresholdResult(desc, "b_to_a", t_ba, num_ba),
    )


def inseparability_threshold(g: float, kappa: float, r: float, side: ChannelSide, *, bisect: bool = True) -> ThresholdResult:
    """Entanglement sudden-death time under the laser channel.

    Two-side: t_c = ln[(g + kappa tanh r) / (g (1 + tanh r))] / (2 (kappa - g)),
    infinite for pure loss.  One-side: t_c = ln(kappa / g) / (2 (kappa - g)),
    independent of r, infinite for pure loss and pure gain.
    """
    _check_threshold_args(g, kappa, r)
    th = math.tanh(r)
    degenerate = abs(kappa - g) <= _RATE_DEGENERACY_TOL * (kappa + g)
    if side is ChannelSide.BOTH:
        if g == 0.0:
            t_closed = INFINITE_THRESHOLD
        elif degenerate:
            t_closed = th / (2.0 * kappa * (1.0 + th))
        else:
            t_closed = math.log((g + kappa * th) / (g * (1.0 + th))) / (2.0 * (kappa - g))
    else:
        if g == 0.0 or kappa == 0.0:
            t_closed = INFINITE_THRESHOLD
        elif degenerate:
            t_closed = 1.0 / (2.0 * kappa)
        else:
            t_closed = math.log(kappa / g) / (2.0 * (kappa - g))
    channel = ChannelSpec(kind="laser", side=side, g=g, kappa=kappa)
    if not bisect:
        return ThresholdResult(channel.describe(), "inseparability", t_closed, math.nan, status="closed-form-only")
    t_numeric = _bisect_or_inf(channel, r, "E_N", 1.0 / _default_rate(g, kappa))
    return ThresholdResult(channel.describe(), "inseparability", t_closed, t_numeric)


def _check_threshold_args(g: float, kappa: float, r: float) -> None:
    if not (np.isfinite(g) and np.isfinite(kappa) and g >= 0 and kappa >= 0):
        raise InvalidArgumentError(f"rates must be finite and >= 0, got g={g}, kappa={kappa}")
    if g == 0.0 and kappa == 0.0:
        raise InvalidArgumentError("g and kappa cannot both be zero")
    if not (np.isfinite(r) and r > 0):
        raise InvalidArgumentError(f"r must be finite and > 0, got {r}")
