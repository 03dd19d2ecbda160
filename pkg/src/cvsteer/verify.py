"""Cross-validation suites: closed forms against the brute-force oracle.

Each suite walks a standard parameter grid, records the worst deviation and
compares it with the suite tolerance.  Used by ``cvsteer verify`` and by the
acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import oracle
from .channels import ChannelSide, ChannelSpec, laser_coefficients, thermal_preset
from .criteria import SteeringDirection, entropic_sum, reid_inferred_variance, Quadrature
from .errors import InvalidArgumentError
from .measures import (
    inseparability_threshold,
    one_side_thresholds,
    two_way_laser_threshold,
    two_way_thermal_threshold,
)
from .states import TwoModeGaussianState, make_tmsv, symplectic_eigenvalues

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_suites", "random_physical_state"]

_R_GRID = (0.3, 0.5, 0.88)
_KT_GRID = (0.1, 0.3, 0.6)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    worst_case: str

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance


def random_physical_state(rng: np.random.Generator, *, with_mean: bool = False) -> TwoModeGaussianState:
    """Random two-mode Gaussian state via a Williamson construction.

    V = S diag(nu1, nu1, nu2, nu2) S^T with S = expm(Omega H) symplectic for
    symmetric H, so physicality holds by construction.
    """
    from .states import SYMPLECTIC_FORM

    h = rng.normal(scale=0.35, size=(4, 4))
    h = h + h.T
    s = expm(SYMPLECTIC_FORM @ h)
    nus = rng.uniform(1.0, 3.0, size=2)
    d = np.diag(np.repeat(nus, 2))
    mean = rng.normal(scale=1.0, size=4) if with_mean else np.zeros(4)
    return TwoModeGaussianState(mean, s @ d @ s.T)


def _decohered_family():
    """(label, state, B, C) for the two-side laser family on the standard grid."""
    cases = []
    for r in _R_GRID:
        cases.append((f"tmsv r={r}", make_tmsv(r), math.cosh(2 * r), math.sinh(2 * r)))
    for r in (0.5,):
        for kt in _KT_GRID:
            for label, params in (
                ("loss", laser_coefficients(0.0, 1.0, kt)),
                ("thermal nbar=1", thermal_preset(1.0, 1.0, kt)),
                ("gain", laser_coefficients(1.0, 0.0, 0.25 * kt)),
            ):
                from .channels import apply_laser

                state = apply_laser(make_tmsv(r), params, ChannelSide.BOTH)
                b = params.noise + params.survival * math.cosh(2 * r)
                c = params.survival * math.sinh(2 * r)
                cases.append((f"{label} r={r} t={params.t}", state, b, c))
    return cases


def _closed_form_joint_pdf(x: np.ndarray, b: float, c: float, variables: str) -> np.ndarray:
    # P(x1, x2) = exp(-[B(x1^2+x2^2) -+ 2C x1 x2]/(B^2-C^2)) / (pi sqrt(B^2-C^2));
    # the momentum pair flips the sign of the correlation term.
    sign = 1.0 if variables == "q" else -1.0
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    det = b * b - c * c
    return np.exp(-(b * (x1**2 + x2**2) - sign * 2.0 * c * x1 * x2) / det) / (math.pi * math.sqrt(det))


def _suite_pdf() -> SuiteResult:
    worst, worst_case = 0.0, ""
    for label, state, b, c in _decohered_family():
        for variables in ("q", "p"):
            table, grid = oracle.pdf_from_cf(state, variables)
            exact = _closed_form_joint_pdf(grid.axis, b, c, variables)
            dev = float(np.max(np.abs(table - exact)))
            if dev > worst:
                worst, worst_case = dev, f"{label} [{variables}]"
            # Inferred variance re-minimized on the table vs the closed form
            # (B^2 - C^2)/(2B), checked to its own tolerance below.
    return SuiteResult("pdf", worst, 1e-7, worst_case)


def _suite_inferred_variance() -> SuiteResult:
    worst, worst_case = 0.0, ""
    for label, state, b, c in _decohered_family():
        closed = (b * b - c * c) / (2.0 * b)
        for variables, quad in (("q", Quadrature.Q), ("p", Quadrature.P)):
            table, grid = oracle.pdf_from_cf(state, variables)
            numeric = oracle.numeric_inferred_variance(table, grid, "a_to_b")
            module_value = reid_inferred_variance(state, SteeringDirection.A_TO_B, quad)
            dev = max(abs(numeric - closed), abs(numeric - module_value))
            if dev > worst:
                worst, worst_case = dev, f"{label} [{variables}]"
    return SuiteResult("inferred-variance", worst, 1e-6, worst_case)


def _suite_entropy() -> SuiteResult:
    worst, worst_case = 0.0, ""
    for label, state, b, c in _decohered_family():
        det = b * b - c * c
        closed_joint = math.log(math.e * math.pi * math.sqrt(det))
        closed_marginal = 0.5 * math.log(math.pi * math.e * b)
        closed_cond_sum = math.log(math.pi * math.e * det / b)
        cond_sum = 0.0
        for variables in ("q", "p"):
            table, grid = oracle.pdf_from_cf(state, variables)
            joint = oracle.numeric_entropy(table, grid, "joint")
            marginal = oracle.numeric_entropy(table, grid, "marginal")
            cond_sum += joint - marginal
            for name, numeric, closed in (
                ("joint", joint, closed_joint),
                ("marginal", marginal, closed_marginal),
            ):
                dev = abs(numeric - closed)
                if dev > worst:
                    worst, worst_case = dev, f"{label} [{variables} {name}]"
        for name, closed in (
            ("conditional-sum", closed_cond_sum),
            ("entropic-criterion", entropic_sum(state, SteeringDirection.A_TO_B)),
        ):
            dev = abs(cond_sum - closed)
            if dev > worst:
                worst, worst_case = dev, f"{label} [{name}]"
    return SuiteResult("entropy", worst, 1e-5, worst_case)


def _moment_states():
    yield "tmsv r=0.3", make_tmsv(0.3)
    yield "tmsv r=3", make_tmsv(3.0)
    from .channels import PhaseSensitiveParams, apply_phase_sensitive, apply_laser

    yield "one-side laser", apply_laser(
        make_tmsv(0.8), laser_coefficients(0.4, 1.0, 0.3), ChannelSide.B
    )
    yield "phase-sensitive", apply_phase_sensitive(
        make_tmsv(0.6),
        PhaseSensitiveParams(kappa=1.0, nbar=1.0, m=1.0 + 0.4j, t=0.3),
        ChannelSide.B,
    )
    yield "displaced tmsv", TwoModeGaussianState([0.3, -0.2, 0.1, 0.4], make_tmsv(0.5).cm)


def _suite_moments() -> SuiteResult:
    worst, worst_case = 0.0, ""
    for label, state in _moment_states():
        mean, cm = oracle.numeric_moments(state)
        dev = max(float(np.max(np.abs(mean - state.mean))), float(np.max(np.abs(cm - state.cm))))
        if dev > worst:
            worst, worst_case = dev, label
    return SuiteResult("moments", worst, 1e-7, worst_case)


def _suite_symplectic(n_states: int = 1000) -> SuiteResult:
    from .states import ModeLabel, partial_transpose

    rng = np.random.default_rng(20240817)
    worst, worst_case = 0.0, ""
    for k in range(n_states):
        state = random_physical_state(rng)
        for label, cm in (("cm", state.cm), ("pt", partial_transpose(state, ModeLabel.B))):
            closed = symplectic_eigenvalues(cm)
            numeric = oracle.numeric_symplectic(cm)
            dev = max(abs(closed[0] - numeric[0]), abs(closed[1] - numeric[1]))
            if dev > worst:
                worst, worst_case = dev, f"sample {k} [{label}]"
    return SuiteResult("symplectic", worst, 1e-9, worst_case)


def _threshold_results():
    for r in (0.3, 0.5, 1.0):
        yield two_way_laser_threshold(0.0, 1.0, r)
        yield two_way_laser_threshold(1.0, 0.0, r)
        for gamma in (0.5, 1.0, 2.0):
            yield two_way_laser_threshold(gamma, 1.0, r)
        for res in one_side_thresholds(0.0, 1.0, r):
            yield res
        for res in one_side_thresholds(1.0, 0.0, r):
            yield res
        for res in one_side_thresholds(0.5, 1.0, r):
            yield res
        yield inseparability_threshold(1.0, 0.0, r, ChannelSide.BOTH)
        yield inseparability_threshold(0.5, 1.0, r, ChannelSide.BOTH)
        yield inseparability_threshold(0.5, 1.0, r, ChannelSide.B)
    for nbar, r in ((0.0, 0.5), (0.2, 0.8), (0.5, 1.0)):
        yield two_way_thermal_threshold(nbar, r)
        preset = thermal_preset(1.0, nbar, 0.0)
        if nbar > 0:
            yield inseparability_threshold(preset.g, preset.kappa, r, ChannelSide.BOTH)
            yield inseparability_threshold(preset.g, preset.kappa, r, ChannelSide.B)


def _suite_thresholds() -> SuiteResult:
    worst, worst_case = 0.0, ""
    for res in _threshold_results():
        if math.isinf(res.t_closed) or math.isinf(res.t_numeric):
            rel = 0.0 if res.agreement == 0.0 else math.inf
        else:
            rel = res.agreement / max(1.0, abs(res.t_closed))
        if rel > worst:
            worst, worst_case = rel, f"{res.channel} {res.direction}"
    return SuiteResult("thresholds", worst, 1e-6, worst_case)


SUITES = {
    "pdf": _suite_pdf,
    "inferred-variance": _suite_inferred_variance,
    "entropy": _suite_entropy,
    "moments": _suite_moments,
    "symplectic": _suite_symplectic,
    "thresholds": _suite_thresholds,
}


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise InvalidArgumentError(f"unknown suite {name!r}; expected one of {sorted(SUITES)} or 'all'")
    return SUITES[name]()


def run_suites(name: str = "all") -> list[SuiteResult]:
    if name == "all":
        return [fn() for fn in SUITES.values()]
    return [run_suite(name)]
