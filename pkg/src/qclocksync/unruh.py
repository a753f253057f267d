"""The accelerated-detector channel.

A uniformly accelerated two-level detector coupled to the field for a finite
window either stays put, de-excites while depositing a quantum in one field
sector, or gets excited (thermally, weight q) while depositing a quantum in
an orthogonal sector. To first order in the coupling this is a three-branch
map on the joint detector-field state.

Two independent constructions of the post-channel detector state live here:

* :func:`apply_unruh_map` attaches a 3-sector ancilla, applies the branch
  map, normalizes, and traces the ancilla out (the brute-force path);
* :func:`closed_form_rho_ab` / :func:`closed_form_rho_full` emit the reduced
  and full density matrices directly from the closed forms.

The brute-force path is the oracle the closed forms are tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .linalg import MAX_DIM, PureState, partial_trace
from .states import build_z_state


class FieldSector(IntEnum):
    """Mutually orthogonal field states distinguishable after the interaction."""

    VACUUM = 0
    # One-particle sector reached by de-exciting the detector (weight nu^2).
    F1 = 1
    # One-particle sector reached by exciting the detector (weight q*nu^2).
    F2 = 2


@dataclass(frozen=True)
class ChannelOutput:
    """Result of pushing a pure state through the channel.

    ``joint_state``  normalized detectors (x) ancilla state
    ``norm_const``   norm of the unnormalized joint state; for a Z-state
                     input this equals sqrt(1 + (q nu^2 (n-k) + nu^2 k)/((1-q) n))
    ``rho_atoms``    detector density matrix with the ancilla traced out
    """

    joint_state: PureState
    norm_const: float
    rho_atoms: np.ndarray


def _lowering(amps: np.ndarray, n: int, target: int) -> np.ndarray:
    """|0><1| on ``target``: moves amplitude from excited to ground kets."""
    bit = 1 << (n - 1 - target)
    out = np.zeros_like(amps)
    idx = np.arange(amps.size)
    excited = (idx & bit) != 0
    out[idx[excited] ^ bit] = amps[excited]
    return out


def _raising(amps: np.ndarray, n: int, target: int) -> np.ndarray:
    """|1><0| on ``target``: moves amplitude from ground to excited kets."""
    bit = 1 << (n - 1 - target)
    out = np.zeros_like(amps)
    idx = np.arange(amps.size)
    ground = (idx & bit) == 0
    out[idx[ground] | bit] = amps[ground]
    return out


def _validate_channel_params(q: float, nu: float) -> None:
    if not 0.0 <= q < 1.0:
        raise ValueError(f"q must lie in [0, 1), got {q}")
    if nu < 0.0:
        raise ValueError(f"nu must be non-negative, got {nu}")


def apply_unruh_map(psi: PureState, target: int, q: float, nu: float) -> ChannelOutput:
    """Apply the three-branch channel to one qubit of a pure state.

    Builds the unnormalized joint state

        |psi> (x) |vacuum>
        + nu/sqrt(1-q) * [ sqrt(q) * (raise_target |psi>) (x) |F2>
                           + (lower_target |psi>) (x) |F1> ],

    normalizes it, and traces the ancilla out. ``psi`` must not already
    carry an ancilla. At nu = 0 the channel is exactly the identity.
    """
    _validate_channel_params(q, nu)
    if psi.ancilla_dim != 1:
        raise ValueError("input state already carries an ancilla")
    n = psi.num_qubits
    if not 0 <= target < n:
        raise ValueError(f"target qubit {target} out of range for {n} qubits")
    if (1 << n) * 3 > MAX_DIM:
        raise ValueError(f"joint state for n={n} exceeds MAX_DIM={MAX_DIM}")

    amps = psi.amplitudes / psi.norm
    scale = nu / math.sqrt(1.0 - q)
    joint = np.zeros((amps.size, 3), dtype=complex)
    joint[:, FieldSector.VACUUM] = amps
    joint[:, FieldSector.F2] = math.sqrt(q) * scale * _raising(amps, n, target)
    joint[:, FieldSector.F1] = scale * _lowering(amps, n, target)
    flat = joint.reshape(-1)
    norm_const = float(np.linalg.norm(flat))
    state = PureState(flat / norm_const, n, ancilla_dim=3)

    rho_joint = state.density_matrix()
    rho_atoms = partial_trace(rho_joint, [2] * n + [3], keep=range(n))
    return ChannelOutput(joint_state=state, norm_const=norm_const, rho_atoms=rho_atoms)


def _norm_const_sq(n: int, k: int, q: float, nu: float) -> float:
    return 1.0 + (q * nu**2 * (n - k) + nu**2 * k) / ((1.0 - q) * n)


def _validate_zn(n: int, k: int, q: float, nu: float) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in [1, {n - 1}], got {k}")
    _validate_channel_params(q, nu)


def closed_form_rho_ab(n: int, k: int, q: float, nu: float) -> np.ndarray:
    """Reduced two-detector density matrix after the channel on detector 1.

    For a Z(n, k) input with the channel on the second detector and every
    other detector traced out, the state in the computational basis
    (|00>, |01>, |10>, |11>) is

        k(n-k) / (C^2 n(n-1)) * [[S1, 0, 0, 0 ],
                                 [0,  S2, 1, 0 ],
                                 [0,  1,  S3, 0],
                                 [0,  0,  0, S4]]

    with S1 = (n-k-1)/k + nu^2/(1-q), S2 = 1 + q nu^2 (n-k-1)/((1-q)k),
    S3 = 1 + nu^2 (k-1)/((1-q)(n-k)), S4 = (k-1)/(n-k) + q nu^2/(1-q).
    The trace telescopes to 1 analytically; a 1e-12 guard catches
    transcription bugs. At n=2, k=1 the vanishing combinatorial fractions
    are 0/1 and the formula applies literally.
    """
    _validate_zn(n, k, q, nu)
    one_m_q = 1.0 - q
    s1 = (n - k - 1) / k + nu**2 / one_m_q
    s2 = 1.0 + q * nu**2 * (n - k - 1) / (one_m_q * k)
    s3 = 1.0 + nu**2 * (k - 1) / (one_m_q * (n - k))
    s4 = (k - 1) / (n - k) + q * nu**2 / one_m_q
    pref = k * (n - k) / (_norm_const_sq(n, k, q, nu) * n * (n - 1))
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = pref * s1
    rho[1, 1] = pref * s2
    rho[2, 2] = pref * s3
    rho[3, 3] = pref * s4
    rho[1, 2] = rho[2, 1] = pref
    trace_dev = abs(np.trace(rho).real - 1.0)
    if trace_dev > 1e-12:
        raise ArithmeticError(
            f"closed-form reduced matrix is off unit trace by {trace_dev:.3e}"
        )
    return rho


def closed_form_rho_full(n: int, k: int, q: float, nu: float) -> np.ndarray:
    """Full n-detector density matrix after the channel on detector 1.

    The initial Z(n, k) projector plus the excitation branch projector
    weighted q nu^2/(1-q) and the de-excitation branch projector weighted
    nu^2/(1-q), normalized by C^2. At nu = 0 this is exactly the initial
    projector.
    """
    _validate_zn(n, k, q, nu)
    if n > 12:
        raise ValueError(f"full-state closed form capped at n=12, got n={n}")
    psi = build_z_state(n, k).amplitudes
    raised = _raising(psi, n, 1)
    lowered = _lowering(psi, n, 1)
    weight = nu**2 / (1.0 - q)
    rho = (
        np.outer(psi, psi.conj())
        + q * weight * np.outer(raised, raised.conj())
        + weight * np.outer(lowered, lowered.conj())
    )
    return rho / _norm_const_sq(n, k, q, nu)
