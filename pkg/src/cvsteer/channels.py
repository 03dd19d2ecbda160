"""Covariance-matrix maps for laser (gain + loss) and phase-sensitive channels.

Symbol note: the literature reuses R and T with several meanings.  Internally
a laser channel is stored as a survival factor ``survival = exp(-2(kappa-g)t)``
and an added-noise coefficient ``noise``; the gain-channel (R = e^{2gt}) and
thermal-channel (R = e^{-2 kappa t}, T = 1 - R, N = 2 nbar + 1)
parameterizations of the same map are recovered by the presets below.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .states import ModeLabel, TwoModeGaussianState

__all__ = [
    "ChannelSide",
    "ChannelSpec",
    "LaserChannelParams",
    "PhaseSensitiveParams",
    "laser_coefficients",
    "loss_preset",
    "gain_preset",
    "thermal_preset",
    "apply_laser",
    "v_infinity",
    "apply_phase_sensitive",
]


class ChannelSide(enum.Enum):
    """Which mode(s) pass through the channel."""

    A = "a"
    B = "b"
    BOTH = "two"

    @property
    def modes(self) -> tuple[ModeLabel, ...]:
        if self is ChannelSide.A:
            return (ModeLabel.A,)
        if self is ChannelSide.B:
            return (ModeLabel.B,)
        return (ModeLabel.A, ModeLabel.B)


@dataclass(frozen=True)
class LaserChannelParams:
    """Gain rate g, loss rate kappa and duration t of a laser channel.

    Derived quantities:
        survival  R = exp(-2 (kappa - g) t)   (amplification when g > kappa)
        noise     A = Omega (1 - R) with Omega = (kappa + g)/(kappa - g),
                  continued analytically to A = 2 (kappa + g) t at kappa = g.
    A >= 0 for all admissible parameters; t = 0 is the identity channel.
    """

    g: float
    kappa: float
    t: float

    def __post_init__(self):
        for name, v in (("g", self.g), ("kappa", self.kappa), ("t", self.t)):
            if not np.isfinite(v) or v < 0:
                raise InvalidArgumentError(f"{name} must be finite and >= 0, got {v}")

    @property
    def survival(self) -> float:
        return float(np.exp(-2.0 * (self.kappa - self.g) * self.t))

    @property
    def noise(self) -> float:
        x = 2.0 * (self.kappa - self.g) * self.t
        if x == 0.0:
            return 2.0 * (self.kappa + self.g) * self.t
        # Omega (1 - R) = 2 (kappa + g) t * (1 - e^{-x}) / x, stable at kappa ~ g.
        return float(2.0 * (self.kappa + self.g) * self.t * (-np.expm1(-x)) / x)


def laser_coefficients(g: float, kappa: float, t: float) -> LaserChannelParams:
    """Validated laser-channel parameters for gain g, loss kappa, duration t."""
    return LaserChannelParams(g=g, kappa=kappa, t=t)


def loss_preset(kappa: float, t: float) -> LaserChannelParams:
    """Pure photon-loss channel (g = 0)."""
    return LaserChannelParams(g=0.0, kappa=kappa, t=t)


def gain_preset(g: float, t: float) -> LaserChannelParams:
    """Pure photon-gain (linear amplifier) channel (kappa = 0)."""
    return LaserChannelParams(g=g, kappa=0.0, t=t)


def thermal_preset(kappa: float, nbar: float, t: float) -> LaserChannelParams:
    """Thermal channel with occupation nbar: g -> kappa*nbar, kappa -> kappa*(nbar+1)."""
    if not np.isfinite(nbar) or nbar < 0:
        raise InvalidArgumentError(f"nbar must be finite and >= 0, got {nbar}")
    if not np.isfinite(kappa) or kappa < 0:
        raise InvalidArgumentError(f"kappa must be finite and >= 0, got {kappa}")
    return LaserChannelParams(g=kappa * nbar, kappa=kappa * (nbar + 1.0), t=t)


def apply_laser(
    state: TwoModeGaussianState,
    params: LaserChannelParams,
    side: ChannelSide,
) -> TwoModeGaussianState:
    """Evolve a state through the laser channel on the given side(s).

    Per decohered mode the 2x2 diagonal block maps to noise*I + survival*block
    and the mean scales by sqrt(survival); each correlation to a decohered mode
    scales by sqrt(survival).
    """
    a = params.noise
    s = params.survival
    sq = np.sqrt(s)
    cm = state.cm.copy()
    mean = state.mean.copy()
    for mode in side.modes:
        blk = mode.block
        cm[blk, :] *= sq
        cm[:, blk] *= sq
        cm[blk, blk] = a * np.eye(2) + s * state.block(mode)
        mean[blk] *= sq
    return TwoModeGaussianState(mean, cm)


@dataclass(frozen=True)
class PhaseSensitiveParams:
    """Squeezed thermal bath: loss rate kappa, occupation nbar, complex squeezing m.

    Derived: N = 2 nbar + 1, mixing R = 1 - exp(-2 kappa t) and transmission
    T = exp(-2 kappa t) with R + T = 1.  A qualified bath density operator
    requires |m|^2 <= nbar (nbar + 1).
    """

    kappa: float
    nbar: float
    m: complex
    t: float

    def __post_init__(self):
        for name, v in (("kappa", self.kappa), ("nbar", self.nbar), ("t", self.t)):
            if not np.isfinite(v) or v < 0:
                raise InvalidArgumentError(f"{name} must be finite and >= 0, got {v}")
        m = complex(self.m)
        if not (np.isfinite(m.real) and np.isfinite(m.imag)):
            raise InvalidArgumentError(f"m must be finite, got {m}")
        if abs(m) ** 2 > self.nbar * (self.nbar + 1.0) + 1e-12:
            raise InvalidArgumentError(
                f"|m|^2 = {abs(m) ** 2:.12g} exceeds nbar(nbar+1) = {self.nbar * (self.nbar + 1.0):.12g}"
            )
        object.__setattr__(self, "m", m)

    @property
    def n_factor(self) -> float:
        return 2.0 * self.nbar + 1.0

    @property
    def mixing(self) -> float:
        return float(-np.expm1(-2.0 * self.kappa * self.t))

    @property
    def transmission(self) -> float:
        return float(np.exp(-2.0 * self.kappa * self.t))


def v_infinity(params: PhaseSensitiveParams) -> np.ndarray:
    """Single-mode covariance matrix of the bath's stationary state (t -> infinity)."""
    n = params.n_factor
    re_m, im_m = 2.0 * params.m.real, 2.0 * params.m.imag
    return np.array([[n + re_m, im_m], [im_m, n - re_m]])


def apply_phase_sensitive(
    state: TwoModeGaussianState,
    params: PhaseSensitiveParams,
    side: ChannelSide,
) -> TwoModeGaussianState:
    """Evolve a state through the phase-sensitive environment on the given side(s).

    Per decohered mode: block -> mixing * V_inf + transmission * block, mean
    scales by sqrt(transmission), correlations to the mode by sqrt(transmission).
    With m = 0 this is exactly the thermal laser channel.
    """
    v_inf = v_infinity(params)
    r_mix = params.mixing
    t_keep = params.transmission
    sq = np.sqrt(t_keep)
    cm = state.cm.copy()
    mean = state.mean.copy()
    for mode in side.modes:
        blk = mode.block
        cm[blk, :] *= sq
        cm[:, blk] *= sq
        cm[blk, blk] = r_mix * v_inf + t_keep * state.block(mode)
        mean[blk] *= sq
    return TwoModeGaussianState(mean, cm)


_CHANNEL_KINDS = ("identity", "loss", "gain", "thermal", "laser", "phase-sensitive")


@dataclass(frozen=True)
class ChannelSpec:
    """A channel family with fixed rates, evaluated at varying durations.

    ``kind`` selects the map; only the rates it uses are consulted:
        loss            kappa
        gain            g
        thermal         kappa, nbar
        laser           g, kappa
        phase-sensitive kappa, nbar, m
    Rates default to 1 so durations read as dimensionless products (kappa*t
    or g*t).
    """

    kind: str
    side: ChannelSide = ChannelSide.BOTH
    g: float = 1.0
    kappa: float = 1.0
    nbar: float = 0.0
    m: complex = 0.0

    def __post_init__(self):
        if self.kind not in _CHANNEL_KINDS:
            raise InvalidArgumentError(f"unknown channel kind {self.kind!r}; expected one of {_CHANNEL_KINDS}")

    def laser_params(self, t: float) -> LaserChannelParams:
        if self.kind == "loss":
            return loss_preset(self.kappa, t)
        if self.kind == "gain":
            return gain_preset(self.g, t)
        if self.kind == "thermal":
            return thermal_preset(self.kappa, self.nbar, t)
        if self.kind == "laser":
            return laser_coefficients(self.g, self.kappa, t)
        raise InvalidArgumentError(f"channel kind {self.kind!r} has no laser parameterization")

    def evolve(self, state: TwoModeGaussianState, t: float) -> TwoModeGaussianState:
        """The state after duration t in this channel."""
        if self.kind == "identity" or t == 0.0:
            return state
        if self.kind == "phase-sensitive":
            params = PhaseSensitiveParams(kappa=self.kappa, nbar=self.nbar, m=self.m, t=t)
            return apply_phase_sensitive(state, params, self.side)
        return apply_laser(state, self.laser_params(t), self.side)

    def describe(self) -> dict:
        """JSON-ready summary of the channel (used in threshold reports)."""
        out = {"kind": self.kind, "side": self.side.value}
        if self.kind in ("gain", "laser"):
            out["g"] = self.g
        if self.kind in ("loss", "thermal", "laser", "phase-sensitive"):
            out["kappa"] = self.kappa
        if self.kind in ("thermal", "phase-sensitive"):
            out["nbar"] = self.nbar
        if self.kind == "phase-sensitive":
            out["m"] = {"re": complex(self.m).real, "im": complex(self.m).imag}
        return out
