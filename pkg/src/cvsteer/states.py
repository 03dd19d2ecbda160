"""Two-mode Gaussian states and their symplectic algebra.

Conventions (fixed once, used everywhere):
    Q = a + a†,  P = (a - a†)/i,  so [Q, P] = 2i and the vacuum covariance
    matrix is the 4x4 identity.  Vectors are ordered (Q1, P1, Q2, P2); mode 1
    belongs to Alice (A), mode 2 to Bob (B).  The characteristic function is
    Weyl (symmetric) ordered.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, InvalidArgumentError, UnphysicalStateError

__all__ = [
    "ModeLabel",
    "CfPoint",
    "TwoModeGaussianState",
    "SYMPLECTIC_FORM",
    "make_tmsv",
    "vacuum",
    "cf_eval",
    "partial_transpose",
    "symplectic_eigenvalues",
]

# Omega = diag(J, J) with J = [[0, 1], [-1, 0]], for the (Q1,P1,Q2,P2) layout.
SYMPLECTIC_FORM = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
SYMPLECTIC_FORM.setflags(write=False)

# Constructors symmetrize (M + M^T)/2 but reject anything more lopsided than
# this, to keep downstream determinants stable.
SYMMETRY_TOL = 1e-9
# The closed-form symplectic spectrum takes a square root of a discriminant
# that vanishes for pure states, so rounding error of order eps in det V
# shows up as sqrt(eps) ~ 1e-8 in the smallest eigenvalue.  The uncertainty
# check must leave room for that amplification.
PHYSICALITY_TOL = 1e-7


class ModeLabel(enum.Enum):
    """The two parties: A holds mode 1, B holds mode 2."""

    A = 1
    B = 2

    @property
    def block(self) -> slice:
        """Index slice of this mode's 2x2 block in the 4x4 covariance matrix."""
        return slice(0, 2) if self is ModeLabel.A else slice(2, 4)

    @property
    def other(self) -> "ModeLabel":
        return ModeLabel.B if self is ModeLabel.A else ModeLabel.A


@dataclass(frozen=True)
class CfPoint:
    """Real arguments of the characteristic function: alpha = q1 + i p1, beta = q2 + i p2."""

    q1: float
    p1: float
    q2: float
    p2: float

    def __post_init__(self):
        vals = (self.q1, self.p1, self.q2, self.p2)
        if not all(np.isfinite(v) for v in vals):
            raise InvalidArgumentError(f"CF arguments must be finite, got {vals}")

    def as_array(self) -> np.ndarray:
        return np.array([self.q1, self.p1, self.q2, self.p2])


class TwoModeGaussianState:
    """Immutable mean vector + 4x4 covariance matrix of a physical state.

    The covariance matrix holds second central moments of (Q1, P1, Q2, P2)
    with vacuum normalized to the identity.  Construction enforces symmetry,
    positive definiteness and the uncertainty bound (symplectic eigenvalues
    >= 1 - PHYSICALITY_TOL).
    """

    __slots__ = ("_mean", "_cm")

    def __init__(self, mean, cm):
        mean = np.asarray(mean, dtype=float).reshape(-1)
        cm = np.asarray(cm, dtype=float)
        if mean.shape != (4,):
            raise InvalidArgumentError(f"mean must have 4 entries, got shape {mean.shape}")
        if cm.shape != (4, 4):
            raise InvalidArgumentError(f"cm must be 4x4, got shape {cm.shape}")
        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(cm))):
            raise InvalidArgumentError("mean and cm must be finite")
        asym = np.max(np.abs(cm - cm.T))
        if asym > SYMMETRY_TOL:
            raise UnphysicalStateError(f"covariance matrix asymmetry {asym:.3e} exceeds {SYMMETRY_TOL}")
        cm = 0.5 * (cm + cm.T)
        eigs = np.linalg.eigvalsh(cm)
        # The eigensolver's absolute error grows with the largest eigenvalue,
        # so the definiteness test must be relative to the matrix scale
        # (strongly amplified states are legitimately ill-conditioned).
        if eigs[0] <= -1e-9 * max(1.0, eigs[-1]):
            raise UnphysicalStateError("covariance matrix is not positive definite")
        nu1, nu2 = symplectic_eigenvalues(cm, _validated=True)
        # For pure states the discriminant under the square root vanishes
        # identically, so its rounding error (of order eps times the fourth
        # power of the matrix norm) dominates: the slack must grow with the
        # squared scale of the matrix or strongly squeezed pure states would
        # be rejected.
        slack = PHYSICALITY_TOL * max(1.0, eigs[-1]) ** 2
        if nu2 < 1.0 - slack:
            raise UnphysicalStateError(
                f"uncertainty relation violated: smallest symplectic eigenvalue {nu2:.12g} < 1"
            )
        mean.setflags(write=False)
        cm.setflags(write=False)
        object.__setattr__(self, "_mean", mean)
        object.__setattr__(self, "_cm", cm)

    def __setattr__(self, name, value):
        raise AttributeError("TwoModeGaussianState is immutable")

    @property
    def mean(self) -> np.ndarray:
        return self._mean

    @property
    def cm(self) -> np.ndarray:
        return self._cm

    def block(self, mode: ModeLabel) -> np.ndarray:
        """The 2x2 diagonal block of the given mode."""
        s = mode.block
        return self._cm[s, s]

    @property
    def cross_block(self) -> np.ndarray:
        """The 2x2 A-B correlation block (rows mode A, columns mode B)."""
        return self._cm[0:2, 2:4]

    def swapped(self) -> "TwoModeGaussianState":
        """The same state with the two modes relabelled A <-> B."""
        perm = [2, 3, 0, 1]
        return TwoModeGaussianState(self._mean[perm], self._cm[np.ix_(perm, perm)])

    def __repr__(self):
        return f"TwoModeGaussianState(mean={self._mean.tolist()}, cm={self._cm.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, TwoModeGaussianState):
            return NotImplemented
        return np.array_equal(self._mean, other._mean) and np.array_equal(self._cm, other._cm)

    def __hash__(self):
        return hash((self._mean.tobytes(), self._cm.tobytes()))


def vacuum() -> TwoModeGaussianState:
    """The two-mode vacuum."""
    return TwoModeGaussianState(np.zeros(4), np.eye(4))


def make_tmsv(r: float) -> TwoModeGaussianState:
    """Two-mode squeezed vacuum with squeezing parameter r >= 0.

    Diagonal entries cosh 2r, Q-Q correlation +sinh 2r, P-P correlation
    -sinh 2r; a pure state (both symplectic eigenvalues exactly 1).
    """
    if not np.isfinite(r):
        raise InvalidArgumentError(f"squeezing parameter must be finite, got {r}")
    if r < 0:
        raise InvalidArgumentError(f"squeezing parameter must be >= 0, got {r}")
    ch, sh = np.cosh(2.0 * r), np.sinh(2.0 * r)
    cm = np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return TwoModeGaussianState(np.zeros(4), cm)


def cf_eval(state: TwoModeGaussianState, pt: CfPoint) -> complex:
    """Characteristic function chi(q1, p1; q2, p2) of the state.

    chi(xi) = exp{ i (Omega xi) . mean - 1/2 xi^T Omega V Omega^T xi }, which
    for zero-mean states is real with chi(0) = 1 and |chi| <= 1 everywhere.
    """
    xi = pt.as_array()
    eta = SYMPLECTIC_FORM @ xi
    quad = eta @ state.cm @ eta
    return complex(np.exp(-0.5 * quad) * np.exp(1j * (eta @ state.mean)))


def partial_transpose(state: TwoModeGaussianState, mode: ModeLabel) -> np.ndarray:
    """Covariance matrix after transposing the given mode.

    Flips the sign of that mode's P row and column.  The result is a plain
    symmetric matrix: it need not satisfy the uncertainty bound (that failure
    is exactly what signals entanglement).
    """
    p_index = 1 if mode is ModeLabel.A else 3
    flip = np.ones(4)
    flip[p_index] = -1.0
    return state.cm * np.outer(flip, flip)


def symplectic_eigenvalues(cm: np.ndarray, *, _validated: bool = False) -> tuple[float, float]:
    """The two symplectic eigenvalues (nu1 >= nu2 > 0) of a 4x4 covariance matrix.

    Uses the closed form 2 nu^2 = Delta +- sqrt(Delta^2 - 4 det V) with
    Delta = det A + det B + 2 det C for the blocks of V.  These are the moduli
    of the eigenvalues of i Omega V, each with multiplicity two.
    """
    cm = np.asarray(cm, dtype=float)
    if cm.shape != (4, 4):
        raise InvalidArgumentError(f"expected a 4x4 matrix, got shape {cm.shape}")
    if not _validated:
        if np.max(np.abs(cm - cm.T)) > SYMMETRY_TOL:
            raise InvalidArgumentError("matrix is not symmetric")
        eigs = np.linalg.eigvalsh(cm)
        if eigs[0] <= -1e-9 * max(1.0, eigs[-1]):
            raise InvalidArgumentError("matrix is not positive definite")
    a = _det2(cm[0:2, 0:2])
    b = _det2(cm[2:4, 2:4])
    c = _det2(cm[0:2, 2:4])
    delta = a + b + 2.0 * c
    det_v = np.linalg.det(cm)
    disc = max(delta * delta - 4.0 * det_v, 0.0)
    root = np.sqrt(disc)
    nu1_sq = 0.5 * (delta + root)
    if nu1_sq <= 0.0 or det_v <= 0.0:
        raise DegenerateInputError("symplectic spectrum collapsed to zero")
    # (delta - root)/2 cancels catastrophically when nu1 >> nu2 (strongly
    # amplified states); the product form is algebraically identical.
    nu2_sq = det_v / nu1_sq
    return float(np.sqrt(nu1_sq)), float(np.sqrt(nu2_sq))


def _det2(m: np.ndarray) -> float:
    # 2x2 closed form; np.linalg.det loses precision near steerable boundaries.
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
