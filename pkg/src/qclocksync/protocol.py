"""The synchronization mathematics.

Alice (detector 0, static) and Bob (detector 1, accelerated) share two
detectors of an entangled register that went through the acceleration
channel. Alice measures in the dual basis at her proper time; Bob's
conditional state then free-evolves for the unknown clock offset delta and
is measured in the dual basis too. The probability of Bob's |pos> outcome
is 1/2 + amplitude * cos(Omega*delta), so the amplitude is the figure of
merit and the offset can be read off the observed frequency.

Closed-form probabilities for the three state families live here next to
the full numeric pipeline that must reproduce them, an excited-count
optimizer for the Z family, the offset estimator, and the two-qubit
concurrence for X-structured states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .linalg import DENSITY_TOL, PureState, is_density_matrix, partial_trace
from .states import HADAMARD, TWO_PI, BasisLabel, dual_basis_transform
from .unruh import apply_unruh_map

# Agreement required between closed forms and the numeric matrix pipeline.
PIPELINE_TOL = 1e-10

# Entries outside the X pattern larger than this disqualify a matrix from
# the X-state concurrence formula.
X_STRUCTURE_TOL = 1e-10

# Conditioning on an Alice outcome less likely than this is a null event.
NULL_EVENT_TOL = 1e-15


class Family(Enum):
    """Initial-state family a probability belongs to."""

    Z = "Z"
    W = "W"
    BIPARTITE = "Bipartite"


@dataclass(frozen=True)
class TwoQubitState:
    """A 4x4 density matrix tagged with the basis it is expressed in."""

    matrix: np.ndarray
    basis: BasisLabel

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {m.shape}")
        check = is_density_matrix(m, tol=DENSITY_TOL)
        if not check:
            raise ValueError(f"not a valid density matrix: {check.failures}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class BobState:
    """Bob's 2x2 state in the dual basis, with its collapse normalization.

    ``gamma`` is the scalar in front of the structured closed form of the
    conditional state; it is preserved by the free evolution.
    """

    matrix: np.ndarray
    basis: BasisLabel
    gamma: float

    def __post_init__(self):
        if self.basis is not BasisLabel.DUAL:
            raise ValueError("BobState is defined in the dual basis")
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got {m.shape}")
        if abs(np.trace(m) - 1.0) > 1e-12:
            raise ValueError("BobState must have unit trace")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def pos_probability(self) -> float:
        """Probability of the |pos> outcome on this state."""
        return float(self.matrix[0, 0].real)


@dataclass(frozen=True)
class ProbabilityResult:
    """Bob's measurement statistics for one parameter point.

    ``amplitude`` is the coefficient of cos(Omega*delta), so
    p_pos = 1/2 + amplitude * cos(omega_delta) and p_pos + p_neg = 1.
    """

    p_pos: float
    p_neg: float
    amplitude: float
    family: Optional[Family] = None


def _result(amplitude: float, omega_delta: float, family: Family) -> ProbabilityResult:
    p = 0.5 + amplitude * math.cos(omega_delta)
    return ProbabilityResult(p_pos=p, p_neg=1.0 - p, amplitude=amplitude, family=family)


def _validate(n: int, k: int, q: float, nu: float) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [1, {n - 1}], got {k}")
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q must lie in [0, 1), got {q}")
    if nu < 0.0:
        raise ValueError(f"nu must be non-negative, got {nu}")


def z_amplitude(n: int, k: int, q: float, nu: float) -> float:
    """cos-coefficient of Bob's |pos> probability for a Z(n, k) input."""
    _validate(n, k, q, nu)
    denom = (n - 1) * ((1.0 - q) * n + nu**2 * k + q * nu**2 * (n - k))
    return k * (n - k) * (1.0 - q) / denom


def w_amplitude(n: int, q: float, nu: float) -> float:
    """cos-coefficient for a W(n) input; identical to z_amplitude(n, 1, ...)."""
    _validate(n, 1, q, nu)
    return (1.0 - q) / ((1.0 - q) * n + nu**2 + q * nu**2 * (n - 1))


def bipartite_amplitude(theta: float, q: float, nu: float) -> float:
    """cos-coefficient for the two-qubit sin(theta)|01> + cos(theta)|10> input.

    The de-excitation branch weights Bob's excited population sin^2(theta)
    and the thermal excitation branch weights q*cos^2(theta); at theta=pi/4
    this coincides with w_amplitude(2, q, nu).
    """
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q must lie in [0, 1), got {q}")
    if nu < 0.0:
        raise ValueError(f"nu must be non-negative, got {nu}")
    denom = 2.0 * (1.0 - q) + 2.0 * nu**2 * (math.sin(theta) ** 2 + q * math.cos(theta) ** 2)
    return (1.0 - q) * math.sin(2.0 * theta) / denom


def prob_pos_z(n: int, k: int, q: float, nu: float, omega_delta: float) -> ProbabilityResult:
    """Closed-form |pos> probability for the Z(n, k) family."""
    return _result(z_amplitude(n, k, q, nu), omega_delta, Family.Z)


def prob_pos_w(n: int, q: float, nu: float, omega_delta: float) -> ProbabilityResult:
    """Closed-form |pos> probability for the W(n) family."""
    return _result(w_amplitude(n, q, nu), omega_delta, Family.W)


def prob_pos_bipartite(theta: float, q: float, nu: float, omega_delta: float) -> ProbabilityResult:
    """Closed-form |pos> probability for the two-qubit theta family."""
    return _result(bipartite_amplitude(theta, q, nu), omega_delta, Family.BIPARTITE)


def conditional_bob_state(rho_ab_dual: TwoQubitState) -> BobState:
    """Bob's state after Alice's |pos> outcome.

    Projects Alice (the first factor) onto |pos>, traces her out, and
    renormalizes. Raises when Alice's |pos> outcome has probability below
    ``NULL_EVENT_TOL``.
    """
    if rho_ab_dual.basis is not BasisLabel.DUAL:
        raise ValueError("conditioning requires the dual-basis representation")
    block = rho_ab_dual.matrix[:2, :2]
    p_alice = float(np.trace(block).real)
    if p_alice < NULL_EVENT_TOL:
        raise ValueError("conditioning on a null event: Alice's |pos> probability vanishes")
    bob = np.array(block) / p_alice
    gamma = float((bob[0, 0] - bob[1, 1]).real) / 4.0
    return BobState(matrix=bob, basis=BasisLabel.DUAL, gamma=gamma)


def evolve_bob_state(bob: BobState, omega_delta: float) -> BobState:
    """Free evolution of Bob's detector for the clock offset.

    The excited level acquires phase exp(+i*omega_delta) relative to the
    ground level; the returned matrix is expressed in the dual basis again.
    Identity at omega_delta = 0 and at full revolutions; trace preserved.
    """
    comp = HADAMARD @ bob.matrix @ HADAMARD
    phase = complex(math.cos(omega_delta), math.sin(omega_delta))
    u = np.array([[1.0, 0.0], [0.0, phase]], dtype=complex)
    evolved = u @ comp @ u.conj().T
    dual = HADAMARD @ evolved @ HADAMARD
    return BobState(matrix=dual, basis=BasisLabel.DUAL, gamma=bob.gamma)


class OptimalK(NamedTuple):
    """Excited-count choice for the Z family at one (n, q, nu) point.

    ``k_opt`` is the exhaustive argmax of the amplitude over k (ties go to
    the smaller k) and is authoritative; ``y_formula_k`` comes from the
    stationary-point formula and is diagnostic only. ``agreement`` flags
    |k_opt - y_formula_k| <= 1.
    """

    k_opt: int
    amplitude: float
    y_formula_k: int
    agreement: bool


def _stationary_k(n: int, q: float, nu: float) -> float:
    """Real-valued maximizer of the Z amplitude over k.

    The amplitude is proportional to k(n-k)/(a + b*k) with
    a = n(1-q+q*nu^2), b = nu^2(1-q); its stationary point is
    (a/b)(sqrt(1 + b*n/a) - 1), which tends to n/2 as nu -> 0.
    """
    if nu == 0.0:
        return n / 2.0
    a = n * (1.0 - q + q * nu**2)
    b = nu**2 * (1.0 - q)
    return (a / b) * math.expm1(0.5 * math.log1p(b * n / a))


def optimal_k(n: int, q: float, nu: float) -> OptimalK:
    """Pick the excited count maximizing the Z-family amplitude."""
    _validate(n, 1, q, nu)
    best_k = 1
    best_amp = z_amplitude(n, 1, q, nu)
    for k in range(2, n):
        amp = z_amplitude(n, k, q, nu)
        if amp > best_amp:
            best_k, best_amp = k, amp
    y_k = min(max(math.floor(_stationary_k(n, q, nu)), 1), n - 1)
    return OptimalK(best_k, best_amp, y_k, abs(best_k - y_k) <= 1)


def estimate_delta(p_obs: float, amplitude: float, omega: float) -> list[float]:
    """All clock offsets consistent with an observed |pos> frequency.

    Inverts p_obs = 1/2 + amplitude*cos(omega*delta) over the window
    |omega*delta| <= 2*pi. With x = arccos((p_obs - 1/2)/amplitude) the
    candidates are {x, -x, 2*pi - x, -(2*pi - x)} / omega, deduplicated;
    the cosine is not injective on the window, so disambiguating among
    them is the caller's job.
    """
    if amplitude <= 0.0:
        raise ValueError("no timing information: amplitude must be positive")
    if not 0.0 <= p_obs <= 1.0:
        raise ValueError(f"observed probability must lie in [0, 1], got {p_obs}")
    if omega <= 0.0:
        raise ValueError("omega must be strictly positive")
    deviation = p_obs - 0.5
    if abs(deviation) > amplitude + 1e-12:
        raise ValueError(
            f"observed probability deviates from 1/2 by {abs(deviation):.3e}, "
            f"beyond the reachable amplitude {amplitude:.3e}"
        )
    c = min(1.0, max(-1.0, deviation / amplitude))
    x = math.acos(c)
    raw = [x / omega, -x / omega, (TWO_PI - x) / omega, -(TWO_PI - x) / omega]
    candidates: list[float] = []
    for value in raw:
        if value not in candidates:
            candidates.append(value)
    return candidates


def concurrence_x_state(rho: TwoQubitState) -> float:
    """Concurrence of an X-structured two-qubit state.

    Valid only in the computational basis with all entries outside the
    diagonal/anti-diagonal below ``X_STRUCTURE_TOL``; uses the closed form
    2*max{0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)}.
    """
    if rho.basis is not BasisLabel.COMPUTATIONAL:
        raise ValueError("X-state concurrence requires the computational basis")
    m = rho.matrix
    x_mask = np.eye(4, dtype=bool) | np.fliplr(np.eye(4, dtype=bool))
    off = float(np.abs(m[~x_mask]).max())
    if off > X_STRUCTURE_TOL:
        raise ValueError(f"matrix is not X-structured: stray entry of magnitude {off:.3e}")
    diag = np.clip(m.diagonal().real, 0.0, None)
    c_inner = abs(m[1, 2]) - math.sqrt(diag[0] * diag[3])
    c_outer = abs(m[0, 3]) - math.sqrt(diag[1] * diag[2])
    return 2.0 * max(0.0, c_inner, c_outer)


def pipeline_probability(
    initial: PureState,
    q: float,
    nu: float,
    omega_delta: float,
    family: Optional[Family] = None,
) -> ProbabilityResult:
    """Full numeric pipeline from an initial pure state to Bob's statistics.

    Channel on detector 1, reduction to detectors {0, 1}, dual-basis
    rotation, conditioning on Alice's |pos> outcome, free evolution by
    omega_delta, and Bob's |pos> measurement. For Z/W/theta inputs this
    reproduces the matching closed form to ``PIPELINE_TOL``.
    """
    n = initial.num_qubits
    if n < 2:
        raise ValueError("pipeline needs at least two detectors")
    out = apply_unruh_map(initial, target=1, q=q, nu=nu)
    rho_ab = partial_trace(out.rho_atoms, [2] * n, keep=(0, 1))
    rho_dual = dual_basis_transform(rho_ab, 2)
    bob = conditional_bob_state(TwoQubitState(rho_dual, BasisLabel.DUAL))

    comp = HADAMARD @ bob.matrix @ HADAMARD
    amplitude = float(comp[0, 1].real)
    evolved = evolve_bob_state(bob, omega_delta)
    p_pos = evolved.pos_probability
    return ProbabilityResult(p_pos=p_pos, p_neg=1.0 - p_pos, amplitude=amplitude, family=family)
