"""Tests for the switched-channel superoperators, the joint state, and q_c."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icoswitch.channels import (
    bloch_to_density,
    check_density,
    noisy_phase_channel,
    pauli_channel,
    rotation_unitary,
)
from icoswitch.qmat import I2, SIGMA_X, channel_choi, herm_eig, kron, partial_trace
from icoswitch.switch import (
    qc_closed_form,
    qc_numeric,
    reduced_control,
    s00,
    s01,
    switch_kraus_apply,
    switch_kraus_ops,
    switch_state,
)

XI = np.pi / 5
E_Y = (0.0, 1.0, 0.0)


def random_axis(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_bloch(rng):
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v * rng.uniform() ** (1 / 3)


def random_pauli_setup(rng):
    """A noisy phase channel with its parameters, plus a random probe."""
    axis_name = ("x", "y", "z")[rng.integers(3)]
    p = rng.uniform()
    xi = rng.uniform(0, 2 * np.pi)
    axis = random_axis(rng)
    ch = noisy_phase_channel(pauli_channel(axis_name, p), axis, xi)
    overlap = axis[("x", "y", "z").index(axis_name)]
    rho = bloch_to_density(random_bloch(rng))
    return ch, rho, p, xi, overlap


class TestS00:
    def test_noise_free_doubles_phase(self):
        ch = noisy_phase_channel(pauli_channel("x", 0.0), E_Y, XI)
        rho = bloch_to_density((0, 0, 0.7))
        u2 = rotation_unitary(E_Y, 2 * XI)
        np.testing.assert_allclose(s00(ch, rho), u2 @ rho @ u2.conj().T, atol=1e-15)

    def test_full_bitflip_cancels_y_rotation(self):
        # sigma_x U sigma_x U = I for a rotation about e_y.
        ch = noisy_phase_channel(pauli_channel("x", 1.0), E_Y, XI)
        rho = bloch_to_density((0.3, -0.1, 0.5))
        np.testing.assert_allclose(s00(ch, rho), rho, atol=1e-15)

    def test_trace_preserved(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            ch, rho, *_ = random_pauli_setup(rng)
            assert abs(np.trace(s00(ch, rho)) - 1.0) < 1e-12


class TestS01:
    def test_single_kraus_equals_cascade(self):
        ch = noisy_phase_channel(pauli_channel("x", 0.0), E_Y, XI)
        rho = bloch_to_density((0, 0, 0.4))
        np.testing.assert_allclose(s01(ch, rho), s00(ch, rho), atol=1e-15)

    def test_aligned_axis_equals_cascade(self):
        # Noise Pauli parallel to the rotation axis: all Kraus operators commute.
        rng = np.random.default_rng(32)
        for sign in (1.0, -1.0):
            ch = noisy_phase_channel(pauli_channel("x", 0.37), (sign, 0.0, 0.0), 1.234)
            rho = bloch_to_density(random_bloch(rng))
            assert np.max(np.abs(s01(ch, rho) - s00(ch, rho))) < 1e-12

    def test_trace_zero_point(self):
        # p = 1/2, axis e_y with bit-flip noise, xi = pi: the coupling vanishes.
        ch = noisy_phase_channel(pauli_channel("x", 0.5), E_Y, np.pi)
        rho = bloch_to_density((0.2, 0.6, -0.3))
        assert abs(np.trace(s01(ch, rho))) < 1e-14

    def test_hermitian(self):
        rng = np.random.default_rng(33)
        for _ in range(50):
            ch, rho, *_ = random_pauli_setup(rng)
            out = s01(ch, rho)
            assert np.max(np.abs(out - out.conj().T)) < 1e-12


class TestSwitchState:
    def test_control_in_basis_state_selects_single_order(self):
        ch = noisy_phase_channel(pauli_channel("y", 0.3), E_Y, XI)
        rho = bloch_to_density((0.1, 0.2, 0.5))
        for p_c, ket in ((0.0, np.diag([0.0, 1.0])), (1.0, np.diag([1.0, 0.0]))):
            joint = switch_state(ch, rho, p_c).joint
            np.testing.assert_allclose(joint, kron(s00(ch, rho), ket.astype(complex)), atol=1e-15)

    def test_matches_kraus_oracle(self):
        rng = np.random.default_rng(34)
        for _ in range(50):
            ch, rho, *_ = random_pauli_setup(rng)
            p_c = rng.uniform()
            direct = switch_state(ch, rho, p_c).joint
            oracle = switch_kraus_apply(ch, rho, p_c)
            assert np.max(np.abs(direct - oracle)) < 1e-12

    def test_joint_is_density(self):
        rng = np.random.default_rng(35)
        for _ in range(20):
            ch, rho, *_ = random_pauli_setup(rng)
            res = switch_state(ch, rho, rng.uniform())
            check_density(res.joint)
            assert abs(np.trace(res.joint) - 1.0) < 1e-12

    def test_probe_marginal_is_cascade(self):
        rng = np.random.default_rng(36)
        for _ in range(20):
            ch, rho, *_ = random_pauli_setup(rng)
            joint = switch_state(ch, rho, rng.uniform()).joint
            np.testing.assert_allclose(
                partial_trace(joint, keep="probe"), s00(ch, rho), atol=1e-12
            )

    def test_control_reduced_is_probe_trace(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            ch, rho, *_ = random_pauli_setup(rng)
            res = switch_state(ch, rho, rng.uniform())
            np.testing.assert_allclose(
                res.control_reduced, partial_trace(res.joint, keep="control"), atol=1e-12
            )

    def test_qc_magnitude_bounded(self):
        rng = np.random.default_rng(38)
        for _ in range(20):
            ch, rho, *_ = random_pauli_setup(rng)
            assert abs(switch_state(ch, rho, 0.5).q_c) <= 1 + 1e-10


class TestSwitchKraus:
    def test_identical_orders_give_product_state(self):
        ch = noisy_phase_channel(pauli_channel("x", 0.0), E_Y, XI)
        rho = bloch_to_density((0, 0, 1.0))
        out = switch_kraus_apply(ch, rho, 0.5)
        plus = np.full((2, 2), 0.5, dtype=complex)
        np.testing.assert_allclose(out, kron(s00(ch, rho), plus), atol=1e-15)

    def test_completeness(self):
        rng = np.random.default_rng(39)
        for _ in range(20):
            ch, *_ = random_pauli_setup(rng)
            total = sum(w.conj().T @ w for w in switch_kraus_ops(ch))
            assert np.max(np.abs(total - np.eye(4))) < 1e-10

    def test_choi_positive(self):
        rng = np.random.default_rng(40)
        for _ in range(10):
            ch, *_ = random_pauli_setup(rng)
            vals, _ = herm_eig(channel_choi(switch_kraus_ops(ch)))
            assert vals[0] > -1e-10


class TestReducedControl:
    def test_unit_coupling_gives_plus_state(self):
        ch = noisy_phase_channel(pauli_channel("x", 0.3), E_Y, 0.0)
        rho = bloch_to_density((0, 0, 0.2))
        np.testing.assert_allclose(
            reduced_control(ch, rho, 0.5), (I2 + SIGMA_X) / 2, atol=1e-14
        )

    def test_zero_coupling_is_diagonal(self):
        ch = noisy_phase_channel(pauli_channel("x", 0.5), E_Y, np.pi)
        rho = bloch_to_density((0, 0, 0.2))
        for p_c in (0.3, 0.5, 0.9):
            np.testing.assert_allclose(
                reduced_control(ch, rho, p_c), np.diag([p_c, 1 - p_c]), atol=1e-14
            )

    def test_valid_density_and_matches_partial_trace(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            ch, rho, *_ = random_pauli_setup(rng)
            p_c = rng.uniform()
            direct = reduced_control(ch, rho, p_c)
            check_density(direct)
            np.testing.assert_allclose(
                direct, switch_state(ch, rho, p_c).control_reduced, atol=1e-12
            )


class TestQcClosedForm:
    def test_zero_phase(self):
        assert qc_closed_form(0.7, 0.0, 0.3) == 1.0

    def test_vanishing_point(self):
        assert abs(qc_closed_form(0.5, np.pi, 0.0)) < 1e-15

    def test_fifth_turn_value(self):
        # 1 - 2 (1/4) (1 - cos(pi/5)) = (5 + sqrt 5)/8
        assert abs(qc_closed_form(0.5, XI, 0.0) - 0.9045084971874737) < 1e-15

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="probability"):
            qc_closed_form(1.1, 0.5, 0.0)
        with pytest.raises(ValueError, match="component"):
            qc_closed_form(0.5, 0.5, 1.5)

    @given(numerator=st.integers(0, 1024))
    @settings(max_examples=100, deadline=None)
    def test_noise_symmetry_exact_on_dyadics(self, numerator):
        # p and 1-p are both exact binary fractions here, so the symmetric
        # product (1-p) p makes the two evaluations bit-identical.
        p = numerator / 1024.0
        assert qc_closed_form(p, 1.3, 0.2) == qc_closed_form(1.0 - p, 1.3, 0.2)

    def test_range(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            q = qc_closed_form(rng.uniform(), rng.uniform(0, 2 * np.pi), rng.uniform(-1, 1))
            assert -1.0 <= q <= 1.0


class TestQcNumeric:
    def test_matches_closed_form(self):
        rng = np.random.default_rng(43)
        worst = 0.0
        for _ in range(200):
            ch, rho, p, xi, overlap = random_pauli_setup(rng)
            worst = max(worst, abs(qc_numeric(ch, rho) - qc_closed_form(p, xi, overlap)))
        assert worst < 1e-10

    def test_noise_free_unit_trace(self):
        ch = noisy_phase_channel(pauli_channel("z", 0.0), E_Y, 1.1)
        assert abs(qc_numeric(ch, bloch_to_density((0, 0, 0.3))) - 1.0) < 1e-14

    def test_tilted_axis_half_overlap(self):
        # overlap^2 = 1/2 at p = 1/2, xi = pi gives q_c = 1/2.
        axis = (1 / np.sqrt(2), 1 / np.sqrt(2), 0.0)
        ch = noisy_phase_channel(pauli_channel("x", 0.5), axis, np.pi)
        assert abs(qc_numeric(ch, bloch_to_density((0, 0, 0.5))) - 0.5) < 1e-14

    def test_probe_independent(self):
        rng = np.random.default_rng(44)
        ch = noisy_phase_channel(pauli_channel("y", 0.35), random_axis(rng), 2.2)
        values = [
            qc_numeric(ch, bloch_to_density(random_bloch(rng))) for _ in range(50)
        ]
        assert max(values) - min(values) < 1e-10
