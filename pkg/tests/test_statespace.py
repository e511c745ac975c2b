"""Tests for state representation, coefficient extraction, and overlap matrices."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loccdist.errors import (
    DimensionMismatch,
    InvalidPartition,
    NotNormalized,
    NotUnitary,
    ShapeMismatch,
)
from loccdist.randomgen import random_orthogonal_pair, random_state, random_unitary
from loccdist.states import basis_state, bell_phi_plus, bell_psi_plus
from loccdist.statespace import (
    Partition,
    StateVector,
    build_overlap_matrix,
    check_orthogonality,
    extract_coefficients,
    inner_product,
    transform_overlap,
    validate_partition,
    validate_state,
)

SQRT_HALF = 1 / np.sqrt(2)
ALICE_FIRST = Partition.bipartite([0], 2)


def permutation_oracle(amps, dims, alice, bob):
    """Independent coefficient extraction: explicit multi-index arithmetic."""
    n = int(np.prod([dims[p] for p in alice]))
    m = int(np.prod([dims[p] for p in bob]))
    out = np.zeros((n, m), dtype=complex)
    for flat, amp in enumerate(amps):
        digits = []
        rem = flat
        for d in reversed(dims):
            digits.append(rem % d)
            rem //= d
        digits.reverse()
        row = 0
        for p in alice:
            row = row * dims[p] + digits[p]
        col = 0
        for p in bob:
            col = col * dims[p] + digits[p]
        out[row, col] = amp
    return out


def overlap_oracle(psi, phi, alice, bob):
    """Direct evaluation of the conditional-vector inner products."""
    F = permutation_oracle(psi.amps, psi.dims, alice, bob)
    G = permutation_oracle(phi.amps, phi.dims, alice, bob)
    n = F.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = np.vdot(G[i], F[j])
    return out


class TestValidateState:
    def test_basis_state_ok(self):
        s = StateVector((2, 2), [1, 0, 0, 0])
        assert validate_state(s) is s

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            validate_state(StateVector((2, 2), [1, 0, 0]))

    def test_not_normalized(self):
        with pytest.raises(NotNormalized):
            validate_state(StateVector((2,), [1, 1]))

    def test_bad_dims(self):
        with pytest.raises(DimensionMismatch):
            validate_state(StateVector((2, 0), []))

    def test_amps_are_read_only(self):
        s = bell_phi_plus()
        with pytest.raises(ValueError):
            s.amps[0] = 1.0


class TestPartition:
    def test_bipartite_complement(self):
        p = Partition.bipartite([1], 3)
        assert p.alice_parties == (1,)
        assert p.bob_parties == (0, 2)

    def test_empty_side_rejected(self):
        with pytest.raises(InvalidPartition):
            validate_partition(Partition((), (0, 1)), 2)

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidPartition):
            validate_partition(Partition((0, 5), (1,)), 2)

    def test_overlap_rejected(self):
        with pytest.raises(InvalidPartition):
            validate_partition(Partition((0,), (0, 1)), 2)


class TestExtractCoefficients:
    def test_bell_reshape(self):
        F = extract_coefficients(bell_phi_plus(), ALICE_FIRST)
        np.testing.assert_array_equal(F, SQRT_HALF * np.eye(2))

    def test_product_basis_state(self):
        F = extract_coefficients(basis_state([2, 2], 0), ALICE_FIRST)
        np.testing.assert_array_equal(F, [[1, 0], [0, 0]])

    def test_three_party_middle_alice_matches_oracle(self):
        rng = np.random.default_rng(11)
        psi = random_state([2, 2, 2], rng)
        partition = Partition.bipartite([1], 3)
        F = extract_coefficients(psi, partition)
        expected = permutation_oracle(psi.amps, psi.dims, [1], [0, 2])
        np.testing.assert_array_equal(F, expected)  # pure permutation: exact

    def test_reconstruction_is_lossless(self):
        rng = np.random.default_rng(12)
        psi = random_state([2, 3, 2], rng)
        partition = Partition((2, 0), (1,))
        F = extract_coefficients(psi, partition)
        perm = partition.alice_parties + partition.bob_parties
        shaped = F.reshape([psi.dims[p] for p in perm])
        rebuilt = shaped.transpose(np.argsort(perm)).ravel()
        np.testing.assert_array_equal(rebuilt, psi.amps)

    def test_alice_order_preserved(self):
        rng = np.random.default_rng(13)
        psi = random_state([2, 3], rng)
        swapped = Partition((1, 0), ())
        with pytest.raises(InvalidPartition):
            extract_coefficients(psi, swapped)
        # Full swap partition is invalid (empty Bob side); use three parties.
        psi = random_state([2, 3, 2], rng)
        F = extract_coefficients(psi, Partition((2, 1), (0,)))
        expected = permutation_oracle(psi.amps, psi.dims, [2, 1], [0])
        np.testing.assert_array_equal(F, expected)


class TestBuildOverlapMatrix:
    def test_bell_pair_frozen_value(self):
        M = build_overlap_matrix(bell_phi_plus(), bell_psi_plus(), ALICE_FIRST)
        np.testing.assert_allclose(M.entries, 0.5 * np.array([[0, 1], [1, 0]]), atol=1e-15)

    def test_orthogonal_product_states_all_zero(self):
        M = build_overlap_matrix(basis_state([2, 2], 0), basis_state([2, 2], 1), ALICE_FIRST)
        np.testing.assert_array_equal(M.entries, np.zeros((2, 2)))

    def test_identical_states_have_unit_trace(self):
        M = build_overlap_matrix(bell_phi_plus(), bell_phi_plus(), ALICE_FIRST)
        assert abs(M.trace - 1) < 1e-12
        assert not check_orthogonality(M)

    def test_entries_match_inner_product_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            dims = [int(rng.integers(2, 5)), int(rng.integers(2, 5))]
            psi, phi = random_state(dims, rng), random_state(dims, rng)
            M = build_overlap_matrix(psi, phi, ALICE_FIRST)
            expected = overlap_oracle(psi, phi, [0], [1])
            np.testing.assert_allclose(M.entries, expected, atol=1e-13)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            build_overlap_matrix(bell_phi_plus(), basis_state([2, 3], 0), ALICE_FIRST)

    def test_source_reassembles_to_fg_convention(self):
        rng = np.random.default_rng(22)
        psi, phi = random_state([3, 3], rng), random_state([3, 3], rng)
        M = build_overlap_matrix(psi, phi, ALICE_FIRST)
        np.testing.assert_allclose(
            M.entries, M.source.G.conj() @ M.source.F.T, atol=1e-12
        )


class TestCheckOrthogonality:
    def test_zero_diagonal_matrix_passes(self):
        M = build_overlap_matrix(bell_phi_plus(), bell_psi_plus(), ALICE_FIRST)
        assert check_orthogonality(M, tol=1e-9)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_orthogonal_pairs_trace_matches_inner_product(self, seed):
        rng = np.random.default_rng(seed)
        dims = [int(rng.integers(2, 6)), int(rng.integers(2, 6))]
        psi, phi = random_orthogonal_pair(dims, rng)
        M = build_overlap_matrix(psi, phi, ALICE_FIRST)
        assert abs(M.trace - inner_product(phi, psi)) < 1e-12
        assert check_orthogonality(M, tol=1e-9)


class TestTransformOverlap:
    def test_identity_is_noop(self):
        M = build_overlap_matrix(bell_phi_plus(), bell_psi_plus(), ALICE_FIRST)
        np.testing.assert_allclose(transform_overlap(M, np.eye(2)).entries, M.entries)

    def test_hadamard_frozen_value(self):
        H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        M = build_overlap_matrix(bell_phi_plus(), bell_psi_plus(), ALICE_FIRST)
        np.testing.assert_allclose(
            transform_overlap(M, H).entries, 0.5 * np.diag([1, -1]), atol=1e-15
        )

    def test_matches_rebuild_from_rotated_states(self):
        rng = np.random.default_rng(31)
        for _ in range(30):
            n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            psi, phi = random_state([n, m], rng), random_state([n, m], rng)
            M = build_overlap_matrix(psi, phi, ALICE_FIRST)
            U = random_unitary(n, rng)
            rotate = np.kron(U, np.eye(m))
            rebuilt = build_overlap_matrix(
                StateVector((n, m), rotate @ psi.amps),
                StateVector((n, m), rotate @ phi.amps),
                ALICE_FIRST,
            )
            np.testing.assert_allclose(
                transform_overlap(M, U).entries, rebuilt.entries, atol=1e-12
            )

    def test_bob_rotation_drops_out(self):
        rng = np.random.default_rng(32)
        for _ in range(30):
            n, m = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            psi, phi = random_state([n, m], rng), random_state([n, m], rng)
            M = build_overlap_matrix(psi, phi, ALICE_FIRST)
            W = random_unitary(m, rng)
            rotate = np.kron(np.eye(n), W)
            rebuilt = build_overlap_matrix(
                StateVector((n, m), rotate @ psi.amps),
                StateVector((n, m), rotate @ phi.amps),
                ALICE_FIRST,
            )
            np.testing.assert_allclose(M.entries, rebuilt.entries, atol=1e-12)

    def test_not_unitary_rejected(self):
        M = build_overlap_matrix(bell_phi_plus(), bell_psi_plus(), ALICE_FIRST)
        with pytest.raises(NotUnitary):
            transform_overlap(M, np.array([[1, 0], [1, 1]], dtype=complex))

    def test_non_hermitian_overlap_supported(self):
        # |00> vs (|01>+|10>)/sqrt(2) gives an asymmetric overlap matrix.
        psi = basis_state([2, 2], 0)
        phi = bell_psi_plus()
        M = build_overlap_matrix(psi, phi, ALICE_FIRST)
        assert not np.allclose(M.entries, M.entries.conj().T)
        U = random_unitary(2, np.random.default_rng(33))
        rotate = np.kron(U, np.eye(2))
        rebuilt = build_overlap_matrix(
            StateVector((2, 2), rotate @ psi.amps),
            StateVector((2, 2), rotate @ phi.amps),
            ALICE_FIRST,
        )
        np.testing.assert_allclose(transform_overlap(M, U).entries, rebuilt.entries, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=5),
    m=st.integers(min_value=2, max_value=5),
    seed=st.integers(min_value=0, max_value=2**31 - 1),
)
def test_trace_law_property(n, m, seed):
    rng = np.random.default_rng(seed)
    psi, phi = random_orthogonal_pair([n, m], rng)
    M = build_overlap_matrix(psi, phi, ALICE_FIRST)
    assert abs(M.trace) <= 1e-9
