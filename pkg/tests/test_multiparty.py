"""Tests for multipartite cascades, exclusion plans, and the Bell demo."""

import numpy as np
import pytest

from loccdist.errors import (
    InvalidPartition,
    NotMutuallyOrthogonal,
    NotOrthogonal,
    TooFewParties,
    TooFewStates,
)
from loccdist.locc import PHI, PSI
from loccdist.multiparty import (
    bell_two_copy_demo,
    cascade_multipartite,
    exclusion_protocol,
    run_exclusion,
    verify_cascade,
    verify_exclusion,
)
from loccdist.randomgen import random_mutually_orthogonal, random_orthogonal_pair
from loccdist.states import basis_state, bell_states, ghz
from loccdist.statespace import Partition

ALICE_FIRST = Partition.bipartite([0], 2)


class TestCascade:
    def test_ghz_pair_two_stages_all_leaves_orthogonal(self):
        plus, minus = ghz(3, +1), ghz(3, -1)
        protocol = cascade_multipartite(plus, minus, [0, 1, 2])
        assert protocol.stage_count == 2
        report = verify_cascade(protocol, plus, minus)
        assert report.passes
        assert report.max_depth == 2
        assert report.max_residual <= 1e-9

    def test_first_party_decides_product_states(self):
        psi, phi = basis_state([2, 2, 2], 0), basis_state([2, 2, 2], 4)
        protocol = cascade_multipartite(psi, phi, [0, 1, 2])
        assert protocol.stage_count == 2
        report = verify_cascade(protocol, psi, phi)
        assert report.passes
        assert report.max_depth == 1  # later stages degenerate
        for edge in protocol.root.edges:
            assert edge.terminal
            assert edge.discriminator.degenerate_flag

    def test_two_parties_defers_to_bipartite_protocol(self):
        psi, phi = random_orthogonal_pair([3, 3], np.random.default_rng(1))
        protocol = cascade_multipartite(psi, phi, [0, 1])
        assert protocol.stage_count == 1
        assert verify_cascade(protocol, psi, phi).passes

    def test_single_party_rejected(self):
        psi, phi = random_orthogonal_pair([4], np.random.default_rng(2))
        with pytest.raises(TooFewParties):
            cascade_multipartite(psi, phi, [0])

    def test_not_orthogonal_rejected(self):
        g = ghz(3, +1)
        with pytest.raises(NotOrthogonal):
            cascade_multipartite(g, g, [0, 1, 2])

    def test_bad_party_order_rejected(self):
        psi, phi = random_orthogonal_pair([2, 2, 2], np.random.default_rng(3))
        with pytest.raises(InvalidPartition):
            cascade_multipartite(psi, phi, [0, 1, 1])

    def test_custom_party_order(self):
        rng = np.random.default_rng(4)
        psi, phi = random_orthogonal_pair([2, 3, 2], rng)
        protocol = cascade_multipartite(psi, phi, [2, 0, 1])
        assert protocol.party_order == (2, 0, 1)
        assert protocol.root.party == 2
        assert verify_cascade(protocol, psi, phi).passes

    @pytest.mark.parametrize("seed", range(12))
    def test_random_three_party_qubits(self, seed):
        psi, phi = random_orthogonal_pair([2, 2, 2], np.random.default_rng(seed))
        protocol = cascade_multipartite(psi, phi, [0, 1, 2])
        report = verify_cascade(protocol, psi, phi)
        assert report.passes
        assert protocol.stage_count == 2
        assert abs(report.prob_sum_psi - 1) <= 1e-9
        assert abs(report.prob_sum_phi - 1) <= 1e-9

    @pytest.mark.parametrize("seed", range(5))
    def test_random_four_party_qubits(self, seed):
        psi, phi = random_orthogonal_pair([2, 2, 2, 2], np.random.default_rng(100 + seed))
        protocol = cascade_multipartite(psi, phi, [0, 1, 2, 3])
        report = verify_cascade(protocol, psi, phi)
        assert report.passes
        assert protocol.stage_count == 3


class TestExclusion:
    def test_two_states_single_round(self):
        psi, phi = random_orthogonal_pair([2, 2], np.random.default_rng(5))
        plan = exclusion_protocol([psi, phi], ALICE_FIRST)
        assert plan.copies_used == 1
        assert verify_exclusion(plan).passes

    def test_four_bell_states_three_rounds(self):
        plan = exclusion_protocol(bell_states(), ALICE_FIRST)
        assert plan.copies_used == 3
        report = verify_exclusion(plan)
        assert report.passes
        assert report.misidentifications == 0
        assert report.candidates == 4

    def test_three_random_orthogonal_states(self):
        states = random_mutually_orthogonal([2, 2], 3, np.random.default_rng(6))
        plan = exclusion_protocol(states, ALICE_FIRST)
        assert plan.copies_used == 2
        report = verify_exclusion(plan)
        assert report.passes
        assert report.misidentifications == 0

    def test_round_structure_covers_every_incumbent(self):
        plan = exclusion_protocol(bell_states(), ALICE_FIRST)
        for round_index, round_ in enumerate(plan.rounds, start=1):
            assert round_.challenger == round_index
            incumbents = [incumbent for incumbent, _ in round_.protocols]
            assert incumbents == list(range(round_index))

    def test_not_mutually_orthogonal_rejected(self):
        psi, phi = random_orthogonal_pair([2, 2], np.random.default_rng(7))
        with pytest.raises(NotMutuallyOrthogonal):
            exclusion_protocol([psi, phi, psi], ALICE_FIRST)

    def test_too_few_states_rejected(self):
        psi, _ = random_orthogonal_pair([2, 2], np.random.default_rng(8))
        with pytest.raises(TooFewStates):
            exclusion_protocol([psi], ALICE_FIRST)

    def test_excluded_candidate_never_produces_observed_verdict(self):
        plan = exclusion_protocol(bell_states(), ALICE_FIRST)
        report = verify_exclusion(plan)
        assert report.max_excluded_leak <= 1e-9

    @pytest.mark.parametrize("true_index", range(4))
    def test_sampled_runs_find_the_true_state(self, true_index):
        states = bell_states()
        plan = exclusion_protocol(states, ALICE_FIRST)
        for seed in range(10):
            survivor, log = run_exclusion(plan, states[true_index], seed)
            assert survivor == true_index
            assert len(log) == 3


class TestBellTwoCopyDemo:
    def test_all_four_states_identified(self):
        report = bell_two_copy_demo()
        assert report.passes
        assert report.misidentifications == 0
        assert report.copies_used == 2

    def test_phi_plus_branches_doubly_correlated(self):
        report = bell_two_copy_demo()
        for branch, prob, verdict in report.branch_tables["phi+"]:
            assert verdict == "phi+"
            copy1, copy2 = branch.split()
            a1, b1 = copy1[-2], copy1[-1]
            a2, b2 = copy2[-2], copy2[-1]
            assert a1 == b1 and a2 == b2
            assert prob == pytest.approx(0.25)

    def test_psi_minus_branches_doubly_anticorrelated(self):
        report = bell_two_copy_demo()
        for branch, prob, verdict in report.branch_tables["psi-"]:
            assert verdict == "psi-"
            copy1, copy2 = branch.split()
            assert copy1[-2] != copy1[-1] and copy2[-2] != copy2[-1]

    def test_branch_probabilities_sum_to_one_per_state(self):
        report = bell_two_copy_demo()
        for rows in report.branch_tables.values():
            assert sum(prob for _, prob, _ in rows) == pytest.approx(1.0)
