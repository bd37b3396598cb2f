"""Tests for the small dense complex linear algebra kernels."""

import numpy as np
import pytest

from icoswitch.qmat import (
    ATOL_RECON,
    ATOL_STRUCT,
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    adjoint,
    as_cmatrix,
    channel_choi,
    herm_eig,
    kron,
    mat_mul,
    partial_trace,
)


def random_complex(rng, n):
    return rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))


def random_hermitian(rng, n):
    a = random_complex(rng, n)
    return (a + a.conj().T) / 2


def random_density(rng, n):
    a = random_complex(rng, n)
    rho = a @ a.conj().T
    return rho / np.trace(rho)


class TestAsCmatrix:
    def test_rejects_nan(self):
        with pytest.raises(ValueError, match="non-finite"):
            as_cmatrix([[np.nan, 0], [0, 1]])

    def test_rejects_inf_imag(self):
        with pytest.raises(ValueError, match="non-finite"):
            as_cmatrix([[1j * np.inf, 0], [0, 1]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            as_cmatrix([[1, 2, 3], [4, 5, 6]])


class TestMatMul:
    def test_identity(self):
        np.testing.assert_array_equal(mat_mul(I2, I2), I2)

    def test_pauli_involution(self):
        np.testing.assert_array_equal(mat_mul(SIGMA_X, SIGMA_X), I2)

    def test_pauli_algebra(self):
        np.testing.assert_allclose(mat_mul(SIGMA_X, SIGMA_Y), 1j * SIGMA_Z, atol=0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            mat_mul(I2, np.eye(4, dtype=complex))


class TestAdjoint:
    def test_hermitian_fixed_point(self):
        np.testing.assert_array_equal(adjoint(SIGMA_Y), SIGMA_Y)

    def test_phase_conjugation(self):
        d = np.diag([np.exp(-1j * np.pi / 4), np.exp(1j * np.pi / 4)])
        np.testing.assert_allclose(adjoint(d), d.conj(), atol=0)

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            a = random_complex(rng, 4)
            np.testing.assert_array_equal(adjoint(adjoint(a)), a)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(I2, I2), np.eye(4))

    def test_block_expansion(self):
        out = kron(SIGMA_X, np.diag([1.0, 0.0]).astype(complex))
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 2] = expected[2, 0] = 1.0
        np.testing.assert_array_equal(out, expected)

    def test_dims(self):
        assert kron(I2, I2).shape == (4, 4)

    def test_associative_on_integer_matrices(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            a, b, c = (rng.integers(-3, 4, size=(2, 2)).astype(complex) for _ in range(3))
            np.testing.assert_array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))


class TestPartialTrace:
    def test_product_state(self):
        rng = np.random.default_rng(5)
        rho = random_density(rng, 2)
        sigma = random_density(rng, 2)
        np.testing.assert_allclose(
            partial_trace(kron(rho, sigma), keep="probe"), rho, atol=1e-14
        )
        np.testing.assert_allclose(
            partial_trace(kron(rho, sigma), keep="control"), sigma, atol=1e-14
        )

    def test_bell_state(self):
        phi = np.zeros(4, dtype=complex)
        phi[0] = phi[3] = 1 / np.sqrt(2)
        bell = np.outer(phi, phi.conj())
        np.testing.assert_allclose(partial_trace(bell, keep="probe"), I2 / 2, atol=1e-15)

    def test_trace_preserved(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            m = random_complex(rng, 4)
            m = m / np.trace(m)
            for keep in ("probe", "control"):
                assert abs(np.trace(partial_trace(m, keep=keep)) - 1.0) < 1e-12

    def test_kron_scaling(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            a = random_complex(rng, 2)
            b = random_complex(rng, 2)
            b = b / np.trace(b)
            np.testing.assert_allclose(
                partial_trace(kron(a, b), keep="probe"), a, atol=1e-12
            )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            partial_trace(np.eye(3, dtype=complex), keep="probe")

    def test_bad_tag(self):
        with pytest.raises(ValueError, match="keep"):
            partial_trace(np.eye(4, dtype=complex), keep="ancilla")


class TestHermEig:
    def test_diagonal(self):
        vals, vecs = herm_eig(np.diag([0.2, 0.8]).astype(complex))
        np.testing.assert_allclose(vals, [0.2, 0.8], atol=0)
        np.testing.assert_allclose(vecs, I2, atol=0)

    def test_sigma_x(self):
        vals, _ = herm_eig(SIGMA_X)
        np.testing.assert_allclose(vals, [-1.0, 1.0], atol=1e-14)

    def test_ascending_order(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            vals, _ = herm_eig(random_hermitian(rng, 4))
            assert np.all(np.diff(vals) >= 0)

    @pytest.mark.parametrize("n", [2, 4, 16])
    def test_reconstruction_and_orthonormality(self, n):
        rng = np.random.default_rng(9 + n)
        for _ in range(5):
            a = random_hermitian(rng, n)
            vals, vecs = herm_eig(a)
            rebuilt = vecs @ np.diag(vals) @ vecs.conj().T
            assert np.max(np.abs(rebuilt - a)) < ATOL_RECON * max(1.0, np.linalg.norm(a))
            assert np.max(np.abs(vecs.conj().T @ vecs - np.eye(n))) < ATOL_RECON

    def test_eigenvalue_sum_is_trace(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            a = random_hermitian(rng, 4)
            vals, _ = herm_eig(a)
            assert abs(vals.sum() - np.trace(a).real) < 1e-11

    def test_zero_matrix(self):
        vals, vecs = herm_eig(np.zeros((4, 4), dtype=complex))
        np.testing.assert_array_equal(vals, np.zeros(4))
        np.testing.assert_array_equal(vecs, np.eye(4))

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            herm_eig(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_deterministic(self):
        rng = np.random.default_rng(11)
        a = random_hermitian(rng, 4)
        first = herm_eig(a)
        second = herm_eig(a.copy())
        np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
        np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)


class TestChannelChoi:
    def test_identity_channel(self):
        choi = channel_choi([I2])
        phi = np.zeros(4, dtype=complex)
        phi[0] = phi[3] = 1 / np.sqrt(2)
        np.testing.assert_allclose(choi, 2 * np.outer(phi, phi.conj()), atol=1e-15)
        assert abs(np.trace(choi) - 2.0) < 1e-15

    def test_full_bit_flip_is_rank_one(self):
        choi = channel_choi([SIGMA_X])
        vals, _ = herm_eig(choi)
        assert np.sum(vals > 1e-12) == 1
        assert abs(vals[-1] - 2.0) < 1e-12

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            channel_choi([])

    def test_mixed_dims_rejected(self):
        with pytest.raises(ValueError, match="dimension"):
            channel_choi([I2, np.eye(4, dtype=complex)])

    def test_complete_channel_has_identity_input_marginal(self):
        # For sum K^dag K = I the partial trace over the output factor is I.
        p = 0.3
        ops = [np.sqrt(1 - p) * I2, np.sqrt(p) * SIGMA_Y]
        choi = channel_choi(ops)
        marginal = partial_trace(choi, keep="probe")
        assert np.max(np.abs(marginal - I2)) < ATOL_STRUCT
        vals, _ = herm_eig(choi)
        assert vals[0] > -ATOL_STRUCT
