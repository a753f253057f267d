"""Initial-state builders, parameter handling, and the measurement-basis change.

The synchronization protocol starts from one of three entangled families:
the single-excitation W state, its fixed-excitation-number generalization
(the Z state, an equal superposition of all Hamming-weight-k kets), and a
two-qubit state parameterized by an angle theta. Measurements happen in the
dual basis |pos> = (|0>+|1>)/sqrt(2), |neg> = (|0>-|1>)/sqrt(2), reached by
a Hadamard rotation on every qubit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .linalg import PureState, as_matrix

TWO_PI = 2.0 * math.pi

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


class BasisLabel(Enum):
    """Which single-qubit basis a matrix is expressed in."""

    COMPUTATIONAL = "computational"
    DUAL = "dual"


@dataclass(frozen=True)
class ProtocolParams:
    """The physics knobs of one protocol instance.

    ``n``            number of detectors (>= 2)
    ``k``            excited detectors in the Z initial state, 1..n-1
    ``q``            acceleration parameter exp(-2*pi*Omega/a), in [0, 1)
    ``nu``           effective detector-field coupling, >= 0
    ``omega_delta``  energy gap times clock offset, radians (free parameter)
    ``theta``        two-qubit state angle, [0, pi/2]
    """

    n: int
    k: int
    q: float
    nu: float
    omega_delta: float = TWO_PI
    theta: float = math.pi / 4

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if not 1 <= self.k <= self.n - 1:
            raise ValueError(f"k must lie in [1, n-1]=[1, {self.n - 1}], got {self.k}")
        if not 0.0 <= self.q < 1.0:
            raise ValueError(f"q must lie in [0, 1), got {self.q}")
        if self.nu < 0.0:
            raise ValueError(f"nu must be non-negative, got {self.nu}")
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not math.isfinite(self.omega_delta):
            raise ValueError("omega_delta must be finite")


@dataclass(frozen=True)
class PhysicalInputs:
    """Raw physical quantities behind the two channel parameters.

    ``omega``     energy gap between the detector levels (> 0)
    ``accel``     proper acceleration of the moving detector (> 0)
    ``eps``       detector-field coupling constant (>= 0)
    ``duration``  interaction time (> 0)
    ``kappa``     width of the Gaussian factor in the coupling (>= 0)
    ``delta``     clock offset tau_A - tau_B (any real)
    """

    omega: float
    accel: float
    eps: float
    duration: float
    kappa: float
    delta: float

    def __post_init__(self):
        if self.omega <= 0.0:
            raise ValueError("omega must be strictly positive")
        if self.accel <= 0.0:
            raise ValueError("accel must be strictly positive")
        if self.duration <= 0.0:
            raise ValueError("duration must be strictly positive")
        if self.eps < 0.0:
            raise ValueError("eps must be non-negative")
        if self.kappa < 0.0:
            raise ValueError("kappa must be non-negative")


def build_w_state(n: int) -> PureState:
    """Equal superposition of all n single-excitation kets, 1/sqrt(n) each."""
    if n < 2:
        raise ValueError(f"W state needs at least 2 qubits, got {n}")
    amps = np.zeros(1 << n, dtype=complex)
    for i in range(n):
        amps[1 << (n - 1 - i)] = 1.0
    return PureState(amps / math.sqrt(n), n)


def build_z_state(n: int, k: int) -> PureState:
    """Equal superposition of every Hamming-weight-k ket on n qubits.

    There are C(n, k) such kets, each with amplitude 1/sqrt(C(n, k)); the
    state is invariant under any permutation of the qubits. k=1 reproduces
    the W state.
    """
    if n < 2:
        raise ValueError(f"Z state needs at least 2 qubits, got {n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [1, {n - 1}], got {k}")
    amps = np.zeros(1 << n, dtype=complex)
    for positions in combinations(range(n), k):
        idx = 0
        for p in positions:
            idx |= 1 << (n - 1 - p)
        amps[idx] = 1.0
    return PureState(amps / math.sqrt(math.comb(n, k)), n)


def build_bipartite_theta(theta: float) -> PureState:
    """Two-qubit state sin(theta)|01> + cos(theta)|10>.

    Unit norm for every real theta; theta=pi/4 is maximally entangled,
    theta=0 the product state |10>.
    """
    amps = np.array([0.0, math.sin(theta), math.cos(theta), 0.0], dtype=complex)
    return PureState(amps, 2)


def dual_basis_transform(rho, qubit_count: int) -> np.ndarray:
    """Conjugate a multi-qubit matrix by Hadamards on every qubit.

    Maps between the computational and dual ({|pos>, |neg>}) descriptions;
    the transform is involutive and preserves trace, Hermiticity, and
    eigenvalues.
    """
    rho = as_matrix(rho)
    dim = 1 << qubit_count
    if rho.shape != (dim, dim):
        raise ValueError(
            f"matrix of shape {rho.shape} does not match {qubit_count} qubits"
        )
    h = HADAMARD
    for _ in range(qubit_count - 1):
        h = np.kron(h, HADAMARD)
    return h @ rho @ h


def effective_coupling(inputs: PhysicalInputs) -> float:
    """Coupling strength accumulated over the interaction window.

    nu = sqrt(eps^2 * omega * duration / (2*pi) * exp(-omega^2 * kappa^2));
    nu = 0 means the detector decouples and the channel is the identity.
    """
    w = inputs.omega
    nu_sq = inputs.eps**2 * w * inputs.duration / TWO_PI * math.exp(-(w * inputs.kappa) ** 2)
    return math.sqrt(nu_sq)


def acceleration_to_q(omega: float, accel: float) -> float:
    """Map the energy gap and proper acceleration to q = exp(-2*pi*omega/accel).

    Strictly increasing in ``accel`` with q -> 1 in the infinite-acceleration
    limit; always in (0, 1) for positive inputs.
    """
    if omega <= 0.0:
        raise ValueError("omega must be strictly positive")
    if accel <= 0.0:
        raise ValueError("accel must be strictly positive")
    return math.exp(-TWO_PI * omega / accel)
