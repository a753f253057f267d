"""Clock synchronization between a static and a uniformly accelerated observer.

n two-level detectors share an entangled initial state; one detector is
uniformly accelerated for a finite window, which subjects it to thermal
noise parameterized by q = exp(-2*pi*Omega/a) and an effective coupling nu.
Dual-basis measurements by the static observer and the accelerated one then
expose the clock offset delta through the cosine dependence of the outcome
probability. This package provides the exact channel, closed-form
probabilities for three initial-state families, the offset estimator, and
sweep tooling for the standard parameter scans.
"""

from .linalg import (
    DENSITY_TOL,
    MAX_DIM,
    DensityCheck,
    PureState,
    dagger,
    is_density_matrix,
    partial_trace,
    tensor_product,
)
from .protocol import (
    PIPELINE_TOL,
    BobState,
    Family,
    OptimalK,
    ProbabilityResult,
    TwoQubitState,
    bipartite_amplitude,
    concurrence_x_state,
    conditional_bob_state,
    estimate_delta,
    evolve_bob_state,
    optimal_k,
    pipeline_probability,
    prob_pos_bipartite,
    prob_pos_w,
    prob_pos_z,
    w_amplitude,
    z_amplitude,
)
from .selftest import oracle_equivalence_failures
from .states import (
    BasisLabel,
    PhysicalInputs,
    ProtocolParams,
    acceleration_to_q,
    build_bipartite_theta,
    build_w_state,
    build_z_state,
    dual_basis_transform,
    effective_coupling,
)
from .sweeps import (
    Figure,
    SweepRow,
    SweepSpec,
    render_rows,
    run_fig1,
    run_fig2,
    run_fig3,
    run_fig4,
    run_sweep,
)
from .unruh import ChannelOutput, FieldSector, apply_unruh_map, closed_form_rho_ab, closed_form_rho_full

__version__ = "0.1.0"

__all__ = [
    "BasisLabel",
    "BobState",
    "ChannelOutput",
    "DENSITY_TOL",
    "DensityCheck",
    "Family",
    "FieldSector",
    "Figure",
    "MAX_DIM",
    "OptimalK",
    "PIPELINE_TOL",
    "PhysicalInputs",
    "ProbabilityResult",
    "ProtocolParams",
    "PureState",
    "SweepRow",
    "SweepSpec",
    "TwoQubitState",
    "acceleration_to_q",
    "apply_unruh_map",
    "bipartite_amplitude",
    "build_bipartite_theta",
    "build_w_state",
    "build_z_state",
    "closed_form_rho_ab",
    "closed_form_rho_full",
    "concurrence_x_state",
    "conditional_bob_state",
    "dagger",
    "dual_basis_transform",
    "effective_coupling",
    "estimate_delta",
    "evolve_bob_state",
    "is_density_matrix",
    "optimal_k",
    "oracle_equivalence_failures",
    "partial_trace",
    "pipeline_probability",
    "prob_pos_bipartite",
    "prob_pos_w",
    "prob_pos_z",
    "render_rows",
    "run_fig1",
    "run_fig2",
    "run_fig3",
    "run_fig4",
    "run_sweep",
    "tensor_product",
    "w_amplitude",
    "z_amplitude",
]
