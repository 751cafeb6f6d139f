import numpy as np
import pytest

from simstoq import (
    HermitianMatrix,
    conjugate,
    from_bloch,
    pair_invariant,
    random_traceless_hermitian,
    star,
    star_closure,
    to_bloch,
    traceless_part,
    triple_invariant,
    unitary_from_generator,
)

from conftest import PAULI_X, PAULI_Z


def _random_vectors(d, count, seed):
    return np.random.default_rng(seed).standard_normal((count, d * d - 1))


class TestConversions:
    def test_basis_elements_map_to_axes(self, basis_of):
        b2 = basis_of(2)
        assert np.array_equal(to_bloch(HermitianMatrix(PAULI_X), b2), [1.0, 0.0, 0.0])
        assert np.array_equal(to_bloch(HermitianMatrix(PAULI_Z), b2), [0.0, 0.0, 1.0])

    def test_rejects_traceful_input(self, basis_of):
        with pytest.raises(ValueError, match="trace"):
            to_bloch(HermitianMatrix(np.eye(2)), basis_of(2))

    def test_traceless_helper(self, basis_of):
        H = HermitianMatrix(np.diag([3.0, 1.0]))
        shifted = traceless_part(H)
        assert abs(np.trace(shifted.mat)) <= 1e-14
        to_bloch(shifted, basis_of(2))

    def test_round_trip_d4(self, basis_of):
        b4 = basis_of(4)
        for seed in range(100):
            H = random_traceless_hermitian(4, seed)
            rec = from_bloch(to_bloch(H, b4), b4)
            assert np.max(np.abs(rec.mat - H.mat)) < 1e-10

    def test_from_bloch_zero(self, basis_of):
        assert np.all(from_bloch(np.zeros(3), basis_of(2)).mat == 0)

    def test_from_bloch_axis_is_sigma_z(self, basis_of):
        assert np.array_equal(from_bloch(np.array([0.0, 0.0, 1.0]), basis_of(2)).mat, PAULI_Z)

    def test_norm_identity(self, basis_of):
        b3 = basis_of(3)
        rng = np.random.default_rng(8)
        for _ in range(25):
            v = rng.standard_normal(8)
            H = from_bloch(v, b3)
            assert np.trace(H.mat @ H.mat).real == pytest.approx(
                2.0 * float(v @ v), abs=1e-10
            )


class TestStarProduct:
    def test_d2_star_vanishes(self, table_of):
        t2 = table_of(2)
        for a, b in zip(_random_vectors(2, 20, 0), _random_vectors(2, 20, 1)):
            assert np.all(star(a, b, t2) == 0.0)

    def test_commutative_bitwise(self, table_of):
        for d in (3, 4, 5):
            t = table_of(d)
            for a, b in zip(_random_vectors(d, 50, d), _random_vectors(d, 50, d + 100)):
                assert np.array_equal(star(a, b, t), star(b, a, t))

    def test_matrix_product_oracle(self, basis_of, table_of):
        # star(a, b)_k must equal Re Tr((AB + BA) L_k) / 4
        for d in (3, 4):
            basis, t = basis_of(d), table_of(d)
            for seed in range(20):
                a, b = _random_vectors(d, 2, 300 + seed)
                A, B = from_bloch(a, basis).mat, from_bloch(b, basis).mat
                oracle = np.einsum("ab,kba->k", A @ B + B @ A, basis.stack).real / 4.0
                assert np.max(np.abs(star(a, b, t) - oracle)) <= 1e-10

    def test_self_star_of_unit_x_d3(self, basis_of, table_of):
        # lambda_1^2 = (2/3) I + (1/sqrt 3) lambda_8 pins the only component
        e1 = np.zeros(8)
        e1[0] = 1.0
        out = star(e1, e1, table_of(3))
        expected = np.zeros(8)
        expected[7] = 1.0 / np.sqrt(3.0)
        assert np.max(np.abs(out - expected)) <= 1e-13

    def test_dimension_mismatch(self, table_of):
        with pytest.raises(ValueError):
            star(np.zeros(3), np.zeros(8), table_of(3))


class TestAlgebraProperties:
    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_identities_on_random_triples(self, table_of, d):
        t = table_of(d)
        n = d * d - 1
        rng = np.random.default_rng(40 + d)
        for _ in range(1000):
            a, b, c, e = rng.standard_normal((4, n))
            ab = star(a, b, t)
            assert np.array_equal(ab, star(b, a, t))
            dist = star(a, b + c, t) - ab - star(a, c, t)
            assert np.max(np.abs(dist)) <= 1e-12
            abc = float(ab @ c)
            assert abs(abc - float(star(b, c, t) @ a)) <= 1e-12
            assert abs(abc - float(star(a, c, t) @ b)) <= 1e-12
            four = float(ab @ star(c, e, t)) - float(star(ab, c, t) @ e)
            assert abs(four) <= 1e-12

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_non_associativity_witness(self, table_of, d):
        t = table_of(d)
        rng = np.random.default_rng(77)
        best = 0.0
        for _ in range(50):
            a, b, c = rng.standard_normal((3, d * d - 1))
            defect = star(star(a, b, t), c, t) - star(a, star(b, c, t), t)
            best = max(best, float(np.linalg.norm(defect)))
            if best > 1e-3:
                break
        assert best > 1e-3


class TestInvariants:
    def test_pair_invariant_axes(self, basis_of):
        e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.array([0.0, 1.0, 0.0])
        assert pair_invariant(e1, e1) == 2.0
        assert pair_invariant(e1, e2) == 0.0

    def test_pair_matches_trace_d4(self, basis_of):
        b4 = basis_of(4)
        rng = np.random.default_rng(9)
        for _ in range(25):
            a, b = rng.standard_normal((2, 15))
            A, B = from_bloch(a, b4).mat, from_bloch(b, b4).mat
            assert pair_invariant(a, b) == pytest.approx(
                np.trace(A @ B).real, abs=1e-10
            )

    def test_triple_paulis(self, table_of):
        e = np.eye(3)
        assert triple_invariant(e[0], e[1], e[2], table_of(2)) == pytest.approx(2j, abs=1e-13)

    def test_triple_same_vector_is_real(self, table_of):
        rng = np.random.default_rng(10)
        a = rng.standard_normal(8)
        z = triple_invariant(a, a, a, table_of(3))
        assert z.imag == 0.0

    def test_triple_matches_trace_d3(self, basis_of, table_of):
        b3, t3 = basis_of(3), table_of(3)
        rng = np.random.default_rng(11)
        for _ in range(25):
            a, b, c = rng.standard_normal((3, 8))
            A, B, C = (from_bloch(v, b3).mat for v in (a, b, c))
            direct = complex(np.trace(A @ B @ C))
            assert abs(triple_invariant(a, b, c, t3) - direct) <= 1e-10


class TestStarClosure:
    def test_generic_diagonal_rank_d3(self, basis_of, table_of):
        H = HermitianMatrix(np.diag([0.9, -0.2, -0.7]))
        closure = star_closure([to_bloch(H, basis_of(3))], table_of(3))
        assert closure.rank == 2

    def test_pure_state_rank_one_and_collinear(self, basis_of, table_of):
        H = HermitianMatrix(np.diag([2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0]))
        v = to_bloch(H, basis_of(3))
        closure = star_closure([v], table_of(3))
        assert closure.rank == 1
        s = star(v, v, table_of(3))
        cosine = float(s @ v) / (np.linalg.norm(s) * np.linalg.norm(v))
        assert np.arccos(min(1.0, cosine)) < 1e-8

    def test_gue_pair_spans_everything_d3(self, basis_of, table_of):
        vs = [
            to_bloch(random_traceless_hermitian(3, seed), basis_of(3))
            for seed in (21, 22)
        ]
        assert star_closure(vs, table_of(3)).rank == 8

    @pytest.mark.parametrize("d", [3, 4])
    def test_rank_invariant_under_conjugation(self, basis_of, table_of, d):
        basis, t = basis_of(d), table_of(d)
        rng = np.random.default_rng(13)
        for trial in range(100):
            S = [
                random_traceless_hermitian(d, 900 + 2 * trial),
                random_traceless_hermitian(d, 901 + 2 * trial),
            ]
            U = unitary_from_generator(rng.uniform(-np.pi, np.pi, basis.size), basis)
            r1 = star_closure([to_bloch(H, basis) for H in S], t).rank
            r2 = star_closure([to_bloch(conjugate(U, H), basis) for H in S], t).rank
            assert r1 == r2

    def test_rejects_empty_and_zero_inputs(self, table_of):
        with pytest.raises(ValueError):
            star_closure([], table_of(2))
        with pytest.raises(ValueError):
            star_closure([np.zeros(3)], table_of(2))
