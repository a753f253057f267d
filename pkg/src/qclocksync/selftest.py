"""Randomized cross-checks between the two channel constructions.

Every check compares two independent routes to the same number: the
ancilla-based brute-force channel against the closed-form reduced matrix,
and the numeric measurement pipeline against the closed-form probabilities
for all three state families.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import partial_trace
from .protocol import (
    pipeline_probability,
    prob_pos_bipartite,
    prob_pos_w,
    prob_pos_z,
)
from .states import build_bipartite_theta, build_w_state, build_z_state
from .unruh import apply_unruh_map, closed_form_rho_ab

DEFAULT_SAMPLES = 50
DEFAULT_TOL = 1e-10


def oracle_equivalence_failures(
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    n_values: tuple[int, ...] = (2, 3, 4, 5, 6),
    tol: float = DEFAULT_TOL,
) -> tuple[list[str], int]:
    """Run the full oracle-equivalence suite.

    Returns (failure messages, number of comparisons). For each n, each
    k, and ``samples`` seeded draws of (q, nu) in [0, 0.95] x [0, 0.5]:

    * brute-force channel + partial traces vs the closed-form reduced
      matrix, entrywise;
    * the numeric pipeline vs the closed-form probability for the Z family
      at a random offset, and (once per n and draw) for the W and
      two-qubit families.
    """
    rng = np.random.default_rng(seed)
    failures: list[str] = []
    checks = 0

    for n in n_values:
        dims = [2] * n
        for k in range(1, n):
            for _ in range(samples):
                q = rng.uniform(0.0, 0.95)
                nu = rng.uniform(0.0, 0.5)
                od = rng.uniform(-2.0 * math.pi, 2.0 * math.pi)

                z = build_z_state(n, k)
                brute = partial_trace(apply_unruh_map(z, 1, q, nu).rho_atoms, dims, keep=(0, 1))
                closed = closed_form_rho_ab(n, k, q, nu)
                dev = float(np.abs(brute - closed).max())
                checks += 1
                if dev > tol:
                    failures.append(
                        f"reduced matrix mismatch {dev:.3e} at n={n} k={k} q={q:.6f} nu={nu:.6f}"
                    )

                p_pipe = pipeline_probability(z, q, nu, od).p_pos
                p_closed = prob_pos_z(n, k, q, nu, od).p_pos
                checks += 1
                if abs(p_pipe - p_closed) > tol:
                    failures.append(
                        f"Z probability mismatch {abs(p_pipe - p_closed):.3e} "
                        f"at n={n} k={k} q={q:.6f} nu={nu:.6f} od={od:.6f}"
                    )

        for _ in range(samples):
            q = rng.uniform(0.0, 0.95)
            nu = rng.uniform(0.0, 0.5)
            od = rng.uniform(-2.0 * math.pi, 2.0 * math.pi)
            theta = rng.uniform(0.0, math.pi / 2)

            p_pipe = pipeline_probability(build_w_state(n), q, nu, od).p_pos
            p_closed = prob_pos_w(n, q, nu, od).p_pos
            checks += 1
            if abs(p_pipe - p_closed) > tol:
                failures.append(
                    f"W probability mismatch {abs(p_pipe - p_closed):.3e} "
                    f"at n={n} q={q:.6f} nu={nu:.6f} od={od:.6f}"
                )

            p_pipe = pipeline_probability(build_bipartite_theta(theta), q, nu, od).p_pos
            p_closed = prob_pos_bipartite(theta, q, nu, od).p_pos
            checks += 1
            if abs(p_pipe - p_closed) > tol:
                failures.append(
                    f"two-qubit probability mismatch {abs(p_pipe - p_closed):.3e} "
                    f"at theta={theta:.6f} q={q:.6f} nu={nu:.6f} od={od:.6f}"
                )

    return failures, checks
