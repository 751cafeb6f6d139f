import numpy as np
import pytest

from simstoq import (
    ComplexMatrix,
    HermitianMatrix,
    UnitaryMatrix,
    commutator_i,
    conjugate,
    hermitian_eigensystem,
    random_traceless_hermitian,
    unitary_from_generator,
)
from simstoq.linalg import eigh_batch

from conftest import PAULI_X, PAULI_Y, PAULI_Z


class TestWrappers:
    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            ComplexMatrix(np.zeros((2, 3)))

    def test_rejects_nan_and_inf(self):
        bad = np.eye(2, dtype=complex)
        bad[0, 1] = np.nan
        with pytest.raises(ValueError, match="finite"):
            ComplexMatrix(bad)
        bad[0, 1] = np.inf
        with pytest.raises(ValueError, match="finite"):
            ComplexMatrix(bad)

    def test_hermitian_residual_check(self):
        mat = np.array([[1.0, 1e-3], [0.0, 2.0]], dtype=complex)
        with pytest.raises(ValueError, match="Hermitian"):
            HermitianMatrix(mat)
        HermitianMatrix(mat, tol=1e-2)

    def test_unitary_residual_check(self):
        with pytest.raises(ValueError, match="unitary"):
            UnitaryMatrix(2.0 * np.eye(3))
        UnitaryMatrix(np.eye(3))

    def test_entries_read_only(self):
        H = HermitianMatrix(np.eye(2))
        with pytest.raises(ValueError):
            H.mat[0, 0] = 5.0


class TestEigensystem:
    def test_already_diagonal(self):
        es = hermitian_eigensystem(HermitianMatrix(np.diag([1.0, 2.0, 3.0])))
        assert np.allclose(es.eigenvalues, [1.0, 2.0, 3.0])
        # eigenvectors are permutation-of-identity columns
        assert np.allclose(np.abs(es.eigenvectors.mat), np.eye(3))

    def test_pauli_z(self):
        es = hermitian_eigensystem(HermitianMatrix(PAULI_Z))
        assert np.allclose(es.eigenvalues, [-1.0, 1.0])

    def test_reconstruction_residual_d5(self):
        for seed in range(50):
            H = random_traceless_hermitian(5, seed)
            es = hermitian_eigensystem(H)
            rec = (es.eigenvectors.mat * es.eigenvalues) @ es.eigenvectors.mat.conj().T
            assert np.max(np.abs(rec - H.mat)) < 1e-9

    def test_reconstruction_property_sweep(self):
        # 1000 seeded instances across d in [2, 8], batched per dimension
        rng_seed = 0
        for d in range(2, 9):
            mats = np.array(
                [random_traceless_hermitian(d, rng_seed + k).mat for k in range(143)]
            )
            rng_seed += 143
            w, V = eigh_batch(mats)
            rec = np.matmul(V * w[:, None, :], V.conj().transpose(0, 2, 1))
            assert np.max(np.abs(rec - mats)) < 1e-9

    def test_degenerate_spectrum(self):
        H = HermitianMatrix(np.diag([2.0, 2.0, 2.0, -1.0]))
        es = hermitian_eigensystem(H)
        assert np.allclose(es.eigenvalues, [-1.0, 2.0, 2.0, 2.0])

    def test_zero_matrix(self):
        es = hermitian_eigensystem(HermitianMatrix(np.zeros((3, 3))))
        assert np.all(es.eigenvalues == 0.0)


class TestCommutator:
    def test_self_commutator_is_zero(self):
        H = random_traceless_hermitian(4, 7)
        assert np.max(np.abs(commutator_i(H, H).mat)) == 0.0

    def test_pauli_xy(self):
        # direct 2x2 oracle: i(sx sy - sy sx) = -2 sz
        oracle = 1j * (PAULI_X @ PAULI_Y - PAULI_Y @ PAULI_X)
        assert np.allclose(oracle, -2.0 * PAULI_Z)
        C = commutator_i(HermitianMatrix(PAULI_X), HermitianMatrix(PAULI_Y))
        assert np.allclose(C.mat, -2.0 * PAULI_Z)

    def test_pauli_xz(self):
        oracle = 1j * (PAULI_X @ PAULI_Z - PAULI_Z @ PAULI_X)
        assert np.allclose(oracle, 2.0 * PAULI_Y)
        C = commutator_i(HermitianMatrix(PAULI_X), HermitianMatrix(PAULI_Z))
        assert np.allclose(C.mat, 2.0 * PAULI_Y)

    def test_hermitian_and_traceless(self):
        for seed in range(50):
            A = random_traceless_hermitian(5, 2 * seed)
            B = random_traceless_hermitian(5, 2 * seed + 1)
            C = commutator_i(A, B)
            assert np.max(np.abs(C.mat - C.mat.conj().T)) <= 1e-12
            assert abs(np.trace(C.mat)) <= 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            commutator_i(HermitianMatrix(np.eye(2)), HermitianMatrix(np.eye(3)))


class TestUnitaryFromGenerator:
    def test_zero_theta_is_identity(self, basis_of):
        U = unitary_from_generator(np.zeros(3), basis_of(2))
        assert np.allclose(U.mat, np.eye(2))

    def test_qubit_closed_form(self, basis_of):
        # exp(i (pi/2) sx) = cos(pi/2) I + i sin(pi/2) sx = i sx
        U = unitary_from_generator(np.array([np.pi / 2, 0.0, 0.0]), basis_of(2))
        assert np.allclose(U.mat, 1j * PAULI_X, atol=1e-12)

    def test_unitarity_random_d4(self, basis_of):
        rng = np.random.default_rng(3)
        for _ in range(20):
            theta = rng.uniform(-np.pi, np.pi, 15)
            U = unitary_from_generator(theta, basis_of(4))
            gram = U.mat.conj().T @ U.mat
            assert np.max(np.abs(gram - np.eye(4))) <= 1e-10

    def test_inverse_composition(self, basis_of):
        rng = np.random.default_rng(4)
        for d in (2, 3, 4):
            basis = basis_of(d)
            theta = rng.uniform(-np.pi, np.pi, basis.size)
            U = unitary_from_generator(theta, basis)
            V = unitary_from_generator(-theta, basis)
            assert np.max(np.abs(U.mat @ V.mat - np.eye(d))) <= 1e-9

    def test_length_mismatch(self, basis_of):
        with pytest.raises(ValueError, match="length"):
            unitary_from_generator(np.zeros(4), basis_of(2))


class TestConjugate:
    def test_identity_leaves_input(self):
        H = random_traceless_hermitian(3, 1)
        out = conjugate(UnitaryMatrix(np.eye(3)), H)
        assert np.array_equal(out.mat, H.mat)

    def test_identity_matrix_is_fixed(self, basis_of):
        U = unitary_from_generator(np.random.default_rng(5).uniform(-1, 1, 8), basis_of(3))
        out = conjugate(U, HermitianMatrix(np.eye(3)))
        assert np.max(np.abs(out.mat - np.eye(3))) <= 1e-12

    def test_spectrum_preserved(self, basis_of):
        rng = np.random.default_rng(6)
        for d in (2, 3, 5):
            basis = basis_of(d)
            for trial in range(10):
                H = random_traceless_hermitian(d, 50 * d + trial)
                U = unitary_from_generator(rng.uniform(-np.pi, np.pi, basis.size), basis)
                w1 = hermitian_eigensystem(H).eigenvalues
                w2 = hermitian_eigensystem(conjugate(U, H)).eigenvalues
                assert np.max(np.abs(w1 - w2)) <= 1e-9


class TestRandomEnsemble:
    def test_traceless_and_hermitian(self):
        H = random_traceless_hermitian(6, 42)
        assert abs(np.trace(H.mat)) <= 1e-12
        assert np.max(np.abs(H.mat - H.mat.conj().T)) <= 1e-15

    def test_deterministic(self):
        a = random_traceless_hermitian(4, 9)
        b = random_traceless_hermitian(4, 9)
        assert a.mat.tobytes() == b.mat.tobytes()

    def test_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            random_traceless_hermitian(1, 0)
