"""Dense complex linear algebra for small multi-qubit systems.

Everything operates on plain numpy arrays of complex dtype. Systems stay at
desk scale (a register of a dozen qubits plus a three-sector field ancilla
at most), so there is no sparsity and no performance tuning; the point is
exactness and testability.

Conventions: subsystem 0 is the leftmost tensor factor, i.e. the most
significant bits of the basis index. A field ancilla, when present, is the
last (least significant) factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Largest admissible matrix/vector dimension. A 12-qubit register joined to
# the 3-dimensional field ancilla (2**12 * 3 = 12288) must still fit.
MAX_DIM = 16384

# Default tolerance for density-matrix validity checks.
DENSITY_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of ndim {a.ndim}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return a


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product of two matrices.

    Entry ((i*rb + k), (j*cb + l)) of the result is a[i, j] * b[k, l].
    Raises ValueError when the output would exceed ``MAX_DIM`` in either
    dimension, which signals an instance too large for this library.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise ValueError(
            f"tensor product of shape ({rows}, {cols}) exceeds MAX_DIM={MAX_DIM}"
        )
    return np.kron(a, b)


def dagger(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(m).conj().T.copy()


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``rho`` must be square with dimension equal to ``prod(dims)``; ``keep``
    is an iterable of subsystem indices (kept subsystems retain their
    original relative order). An empty ``keep`` is the scalar request and
    returns the 1x1 matrix [[tr(rho)]].
    """
    rho = as_matrix(rho)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise ValueError("subsystem dimensions must be positive")
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(
            f"matrix of shape {rho.shape} does not match subsystem dims {dims}"
        )
    keep = sorted(set(int(i) for i in keep))
    if any(i < 0 or i >= len(dims) for i in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    if not keep:
        return np.array([[np.trace(rho)]], dtype=complex)

    n_sys = len(dims)
    reshaped = rho.reshape(dims + dims)
    row_labels = list(range(n_sys))
    # Traced subsystems share one label between their row and column axes,
    # which einsum contracts as a diagonal sum.
    col_labels = [i if i not in keep else n_sys + i for i in range(n_sys)]
    out_labels = keep + [n_sys + i for i in keep]
    reduced = np.einsum(reshaped, row_labels + col_labels, out_labels)
    d_keep = int(np.prod([dims[i] for i in keep]))
    return reduced.reshape(d_keep, d_keep)


@dataclass(frozen=True)
class DensityCheck:
    """Outcome of a density-matrix validity check.

    ``failures`` holds (check name, offending magnitude) pairs for every
    violated property; the object is truthy exactly when all checks pass.
    """

    ok: bool
    failures: tuple[tuple[str, float], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_density_matrix(m, tol: float = DENSITY_TOL) -> DensityCheck:
    """Check Hermiticity, unit trace, and positive semidefiniteness.

    The minimum eigenvalue is computed from the Hermitian part with
    ``numpy.linalg.eigvalsh`` and compared against ``-tol``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"density-matrix check requires a square matrix, got {m.shape}")
    failures = []
    herm_dev = float(np.abs(m - m.conj().T).max())
    if herm_dev > tol:
        failures.append(("hermitian", herm_dev))
    trace_dev = float(abs(np.trace(m) - 1.0))
    if trace_dev > tol:
        failures.append(("trace", trace_dev))
    herm_part = (m + m.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(herm_part)[0])
    if min_eig < -tol:
        failures.append(("positivity", min_eig))
    return DensityCheck(not failures, tuple(failures))


@dataclass(frozen=True)
class PureState:
    """Amplitude vector over ``2**num_qubits * ancilla_dim`` basis kets.

    Qubit 0 is the leftmost tensor factor (most significant bit of the
    basis index); the ancilla, when present, is the last factor. Instances
    are immutable: the amplitude array is copied and marked read-only.
    """

    amplitudes: np.ndarray
    num_qubits: int
    ancilla_dim: int = 1

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1).copy()
        if not np.isfinite(amps).all():
            raise ValueError("amplitudes must be finite (no NaN/Inf)")
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be non-negative")
        if self.ancilla_dim < 1:
            raise ValueError("ancilla_dim must be positive")
        expected = (1 << self.num_qubits) * self.ancilla_dim
        if amps.size != expected:
            raise ValueError(
                f"amplitude vector has length {amps.size}, expected {expected}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "PureState":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return PureState(self.amplitudes / n, self.num_qubits, self.ancilla_dim)

    def subsystem_dims(self) -> list[int]:
        dims = [2] * self.num_qubits
        if self.ancilla_dim > 1:
            dims.append(self.ancilla_dim)
        return dims

    def density_matrix(self) -> np.ndarray:
        """Outer product |psi><psi|."""
        return np.outer(self.amplitudes, self.amplitudes.conj())
