import math

import numpy as np
import pytest

from qclocksync.linalg import is_density_matrix, partial_trace
from qclocksync.states import build_bipartite_theta, build_w_state, build_z_state
from qclocksync.unruh import (
    FieldSector,
    apply_unruh_map,
    closed_form_rho_ab,
    closed_form_rho_full,
)


def norm_const_closed(n, k, q, nu):
    return math.sqrt(1 + (q * nu**2 * (n - k) + nu**2 * k) / ((1 - q) * n))


class TestApplyUnruhMap:
    @pytest.mark.parametrize("q", [0.0, 0.3, 0.9])
    def test_decoupled_channel_is_identity(self, q):
        psi = build_z_state(4, 2)
        out = apply_unruh_map(psi, 1, q, 0.0)
        assert out.norm_const == 1.0
        assert np.abs(out.rho_atoms - psi.density_matrix()).max() == 0.0

    def test_ground_state_fixed_point_at_zero_acceleration(self):
        # With q=0 the excitation branch vanishes, so |0> passes through.
        from qclocksync.linalg import PureState

        psi = PureState(np.array([1.0, 0.0]), num_qubits=1)
        out = apply_unruh_map(psi, 0, 0.0, 0.3)
        assert np.allclose(out.rho_atoms, np.diag([1.0, 0.0]), atol=1e-15)

    def test_excited_state_deexcites_with_weight_nu_squared(self):
        from qclocksync.linalg import PureState

        psi = PureState(np.array([0.0, 1.0]), num_qubits=1)
        out = apply_unruh_map(psi, 0, 0.0, 0.3)
        assert np.allclose(out.rho_atoms, np.diag([0.09, 1.0]) / 1.09, atol=1e-14)

    def test_ground_state_excites_thermally(self):
        # Excitation weight q*nu^2/(1-q) = 0.09 at q=0.5, nu=0.3.
        from qclocksync.linalg import PureState

        psi = PureState(np.array([1.0, 0.0]), num_qubits=1)
        out = apply_unruh_map(psi, 0, 0.5, 0.3)
        assert np.allclose(out.rho_atoms, np.diag([1.0, 0.09]) / 1.09, atol=1e-14)

    def test_norm_const_matches_closed_form_for_z_inputs(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            n = int(rng.integers(2, 7))
            k = int(rng.integers(1, n))
            q = rng.uniform(0.0, 0.95)
            nu = rng.uniform(0.0, 0.5)
            out = apply_unruh_map(build_z_state(n, k), 1, q, nu)
            assert abs(out.norm_const - norm_const_closed(n, k, q, nu)) < 1e-12

    def test_output_is_valid_density_matrix(self):
        rng = np.random.default_rng(32)
        for _ in range(20):
            n = int(rng.integers(2, 6))
            k = int(rng.integers(1, n))
            q = rng.uniform(0.0, 0.95)
            nu = rng.uniform(0.0, 0.5)
            out = apply_unruh_map(build_z_state(n, k), 1, q, nu)
            assert is_density_matrix(out.rho_atoms, tol=1e-10)
            assert out.joint_state.ancilla_dim == 3
            assert abs(out.joint_state.norm - 1.0) < 1e-12

    def test_reduction_matches_closed_form_small_case(self):
        out = apply_unruh_map(build_z_state(3, 1), 1, 0.5, 0.2)
        got = partial_trace(out.rho_atoms, [2, 2, 2], keep=(0, 1))
        assert np.abs(got - closed_form_rho_ab(3, 1, 0.5, 0.2)).max() < 1e-12

    def test_target_out_of_range(self):
        with pytest.raises(ValueError, match="target"):
            apply_unruh_map(build_w_state(3), 3, 0.5, 0.1)

    def test_rejects_existing_ancilla(self):
        out = apply_unruh_map(build_w_state(2), 1, 0.3, 0.1)
        with pytest.raises(ValueError, match="ancilla"):
            apply_unruh_map(out.joint_state, 0, 0.3, 0.1)

    def test_rejects_q_of_one(self):
        with pytest.raises(ValueError, match="q must lie"):
            apply_unruh_map(build_w_state(2), 1, 1.0, 0.1)

    def test_field_sectors(self):
        assert [s.value for s in FieldSector] == [0, 1, 2]


class TestClosedFormReduced:
    def test_unit_trace_across_parameter_space(self):
        rng = np.random.default_rng(33)
        for _ in range(50):
            n = int(rng.integers(2, 30))
            k = int(rng.integers(1, n))
            q = rng.uniform(0.0, 1.0 - 1e-6)
            nu = rng.uniform(0.0, 1.0)
            rho = closed_form_rho_ab(n, k, q, nu)
            assert abs(np.trace(rho).real - 1.0) < 1e-12

    def test_no_channel_bell_like_matrix(self):
        rho = closed_form_rho_ab(2, 1, 0.0, 0.0)
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 1] = expected[2, 2] = expected[1, 2] = expected[2, 1] = 0.5
        assert np.abs(rho - expected).max() < 1e-15

    def test_matches_brute_force_path(self):
        out = apply_unruh_map(build_z_state(4, 2), 1, 0.6, 0.3)
        got = partial_trace(out.rho_atoms, [2] * 4, keep=(0, 1))
        assert np.abs(got - closed_form_rho_ab(4, 2, 0.6, 0.3)).max() < 1e-12

    def test_extreme_acceleration_still_unit_trace(self):
        rho = closed_form_rho_ab(20, 10, 1.0 - 1e-6, 0.1)
        assert abs(np.trace(rho).real - 1.0) < 1e-12

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            closed_form_rho_ab(1, 1, 0.5, 0.1)
        with pytest.raises(ValueError):
            closed_form_rho_ab(4, 0, 0.5, 0.1)
        with pytest.raises(ValueError):
            closed_form_rho_ab(4, 2, 1.0, 0.1)


class TestClosedFormFull:
    def test_decoupled_is_initial_projector(self):
        psi = build_z_state(3, 2)
        rho = closed_form_rho_full(3, 2, 0.7, 0.0)
        assert np.abs(rho - psi.density_matrix()).max() == 0.0

    def test_matches_brute_force_joint_path(self):
        got = apply_unruh_map(build_z_state(3, 1), 1, 0.5, 0.2).rho_atoms
        want = closed_form_rho_full(3, 1, 0.5, 0.2)
        assert np.abs(got - want).max() < 1e-12

    def test_reduction_reproduces_two_detector_form(self):
        rho = closed_form_rho_full(5, 2, 0.4, 0.25)
        got = partial_trace(rho, [2] * 5, keep=(0, 1))
        assert np.abs(got - closed_form_rho_ab(5, 2, 0.4, 0.25)).max() < 1e-12

    def test_excited_population_monotone_in_q(self):
        # Weight-(k+1) population grows with q at fixed nu > 0.
        n, k, nu = 5, 2, 0.3
        weights = np.array([bin(i).count("1") for i in range(1 << n)])
        prev = -1.0
        for q in np.linspace(0.0, 0.95, 20):
            rho = closed_form_rho_full(n, k, q, nu)
            pop = float(np.sum(rho.diagonal().real[weights == k + 1]))
            assert pop >= prev
            prev = pop

    def test_size_cap(self):
        with pytest.raises(ValueError, match="capped"):
            closed_form_rho_full(13, 2, 0.5, 0.1)


class TestOracleEquivalenceSweep:
    def test_reduced_matrices_agree_across_families(self):
        rng = np.random.default_rng(34)
        for n in range(2, 6):
            for k in range(1, n):
                for _ in range(5):
                    q = rng.uniform(0.0, 0.95)
                    nu = rng.uniform(0.0, 0.5)
                    out = apply_unruh_map(build_z_state(n, k), 1, q, nu)
                    got = partial_trace(out.rho_atoms, [2] * n, keep=(0, 1))
                    want = closed_form_rho_ab(n, k, q, nu)
                    assert np.abs(got - want).max() < 1e-10

    def test_bipartite_channel_output_structure(self):
        # sin(t)|01> + cos(t)|10> maps to an X-state with the de-excited
        # population nu^2 sin^2(t)/(1-q) and excited q nu^2 cos^2(t)/(1-q).
        t, q, nu = 0.7, 0.6, 0.4
        out = apply_unruh_map(build_bipartite_theta(t), 1, q, nu)
        c2 = 1 + nu**2 * (math.sin(t) ** 2 + q * math.cos(t) ** 2) / (1 - q)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = nu**2 * math.sin(t) ** 2 / (1 - q)
        expected[1, 1] = math.sin(t) ** 2
        expected[2, 2] = math.cos(t) ** 2
        expected[3, 3] = q * nu**2 * math.cos(t) ** 2 / (1 - q)
        expected[1, 2] = expected[2, 1] = math.sin(t) * math.cos(t)
        assert np.abs(out.rho_atoms - expected / c2).max() < 1e-12
