"""Multipartite cascades and multi-copy exclusion of many candidates.

With more than two parties, the first party in the measurement order plays
Alice against all the others grouped as one joint Bob.  Every measurement
outcome leaves the remaining parties an orthogonal conditional pair, so the
construction recurses until two parties remain and the bipartite protocol
finishes the job: parties - 1 stages in total.

With more than two candidate states, one copy per round distinguishes the
two lowest-indexed surviving candidates; whichever verdict comes up, the
losing candidate would have produced the opposite verdict with certainty,
so it is excluded.  n - 1 copies therefore identify one of n mutually
orthogonal states.  The four Bell states admit a two-copy shortcut.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    InvalidPartition,
    NotMutuallyOrthogonal,
    NotOrthogonal,
    TooFewParties,
    TooFewStates,
)
from .locc import (
    PHI,
    PSI,
    BobDiscriminator,
    LoccProtocol,
    sample_run,
    synthesize_protocol,
    verdict_distribution,
)
from .states import bell_states
from .statespace import Partition, StateVector, inner_product, validate_state

__all__ = [
    "CascadeNode",
    "CascadeEdge",
    "CascadeProtocol",
    "CascadeVerification",
    "ExclusionRound",
    "ExclusionPlan",
    "ExclusionVerification",
    "BellDemoReport",
    "cascade_multipartite",
    "verify_cascade",
    "exclusion_protocol",
    "verify_exclusion",
    "run_exclusion",
    "bell_two_copy_demo",
]


@dataclass(frozen=True, eq=False)
class CascadeEdge:
    """Continuation for one measurement outcome of a cascade node.

    Exactly one of ``child`` (another measuring stage) and ``discriminator``
    (a terminal binary discrimination, possibly forced or unreachable) is
    set.
    """

    outcome: int
    child: "CascadeNode | None" = None
    discriminator: BobDiscriminator | None = None

    @property
    def terminal(self) -> bool:
        return self.child is None


@dataclass(frozen=True, eq=False)
class CascadeNode:
    """One measuring stage: ``party`` measures in ``basis`` (padded rows)."""

    party: int
    basis: np.ndarray
    padded_dim: int
    original_dim: int
    remaining_parties: tuple[int, ...]
    edges: tuple[CascadeEdge, ...]


@dataclass(frozen=True, eq=False)
class CascadeProtocol:
    """Sequential LOCC protocol over three or more parties.

    ``stage_count`` counts the cascading measurements plus the final
    bipartite discrimination: always ``len(party_order) - 1``.
    """

    party_order: tuple[int, ...]
    dims: tuple[int, ...]
    root: CascadeNode

    @property
    def stage_count(self) -> int:
        return len(self.party_order) - 1


@dataclass(frozen=True)
class CascadeVerification:
    """Walk of every reachable branch with exact conditional computation."""

    branch_count: int
    reachable_leaves: int
    max_residual: float
    max_depth: int
    prob_sum_psi: float
    prob_sum_phi: float
    passes: bool


def _reorder_parties(state: StateVector, order: tuple[int, ...]) -> StateVector:
    tensor = state.tensor().transpose(order)
    return StateVector(tuple(state.dims[p] for p in order), tensor.ravel())


def cascade_multipartite(
    psi: StateVector,
    phi: StateVector,
    party_order,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> CascadeProtocol:
    """Build the measurement cascade for ``psi`` vs ``phi``.

    Parties measure in ``party_order``; each stage treats the next party as
    Alice against the joint rest, conditional pairs are renormalized per
    branch, zero-probability branches are pruned, and branches where only
    one candidate survives terminate early with a forced verdict.

    Raises:
        TooFewParties: fewer than two parties.
        NotOrthogonal: the pair is not orthogonal.
        InvalidPartition: ``party_order`` is not a permutation of the parties.
    """
    validate_state(psi, tolerances)
    validate_state(phi, tolerances)
    if psi.dims != phi.dims:
        raise InvalidPartition(f"dims differ: {psi.dims} vs {phi.dims}")
    order = tuple(int(p) for p in party_order)
    if sorted(order) != list(range(psi.num_parties)):
        raise InvalidPartition(f"party order {order} is not a permutation of the parties")
    if psi.num_parties < 2:
        raise TooFewParties("need at least 2 parties to run LOCC")
    overlap = abs(inner_product(phi, psi))
    if overlap > tolerances.orthogonality:
        raise NotOrthogonal(f"states are not orthogonal (|<phi|psi>| = {overlap:.3g})")

    psi_o = _reorder_parties(psi, order)
    phi_o = _reorder_parties(phi, order)
    root = _build_node(psi_o, phi_o, order, tolerances)
    return CascadeProtocol(party_order=order, dims=psi.dims, root=root)


def _build_node(
    psi: StateVector,
    phi: StateVector,
    labels: tuple[int, ...],
    tolerances: Tolerances,
) -> CascadeNode:
    """Node for ``labels[0]`` measuring; states already ordered as ``labels``."""
    partition = Partition(alice_parties=(0,), bob_parties=tuple(range(1, len(labels))))
    protocol = synthesize_protocol(psi, phi, partition, tolerances)
    eta_rows = protocol.conditional_matrix(psi, tolerances)
    nu_rows = protocol.conditional_matrix(phi, tolerances)
    rest_dims = tuple(psi.dims[1:])
    edges = []
    for i in range(protocol.padded_dim):
        eta, nu = eta_rows[i], nu_rows[i]
        eta_n, nu_n = float(np.linalg.norm(eta)), float(np.linalg.norm(nu))
        cut = tolerances.degenerate_norm
        if len(labels) == 2 or eta_n <= cut or nu_n <= cut:
            # Final stage, forced verdict, or unreachable: terminal either way.
            edges.append(CascadeEdge(outcome=i, discriminator=protocol.discriminators[i]))
            continue
        child = _build_node(
            StateVector(rest_dims, eta / eta_n),
            StateVector(rest_dims, nu / nu_n),
            labels[1:],
            tolerances,
        )
        edges.append(CascadeEdge(outcome=i, child=child))
    return CascadeNode(
        party=labels[0],
        basis=protocol.alice_basis,
        padded_dim=protocol.padded_dim,
        original_dim=protocol.original_dim,
        remaining_parties=labels[1:],
        edges=tuple(edges),
    )


def _node_conditionals(node: CascadeNode, amps: np.ndarray, dims: tuple[int, ...]) -> np.ndarray:
    """Unnormalized conditional tensors over the remaining parties, per outcome."""
    first = dims[0]
    rest = int(np.prod(dims[1:])) if len(dims) > 1 else 1
    matrix = amps.reshape(first, rest)
    padded = np.zeros((node.padded_dim, rest), dtype=np.complex128)
    padded[:first] = matrix
    return node.basis.conj() @ padded


def verify_cascade(
    c: CascadeProtocol,
    psi: StateVector,
    phi: StateVector,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> CascadeVerification:
    """Exhaustively walk the cascade with exact (unnormalized) conditionals.

    Every branch reachable with probability above the padding threshold must
    terminate in an orthogonal discriminator; joint branch probabilities
    must sum to one for each candidate.
    """
    order = c.party_order
    psi_amps = _reorder_parties(psi, order).amps
    phi_amps = _reorder_parties(phi, order).amps
    dims = tuple(psi.dims[p] for p in order)

    stats = {
        "branches": 0,
        "leaves": 0,
        "max_residual": 0.0,
        "max_depth": 0,
        "p_psi": 0.0,
        "p_phi": 0.0,
        "ok": True,
    }

    def walk(node: CascadeNode, a: np.ndarray, b: np.ndarray, local_dims, depth: int) -> None:
        stats["max_depth"] = max(stats["max_depth"], depth)
        cond_a = _node_conditionals(node, a, local_dims)
        cond_b = _node_conditionals(node, b, local_dims)
        for edge in node.edges:
            ca, cb = cond_a[edge.outcome], cond_b[edge.outcome]
            wa = float(np.vdot(ca, ca).real)
            wb = float(np.vdot(cb, cb).real)
            stats["branches"] += 1
            if max(wa, wb) <= tolerances.padding_probability:
                continue  # pruned branch; must never carry weight
            if edge.terminal:
                stats["leaves"] += 1
                stats["p_psi"] += wa
                stats["p_phi"] += wb
                overlap = abs(complex(np.vdot(cb, ca)))
                residual = overlap / max(np.sqrt(wa * wb), tolerances.norm_floor)
                stats["max_residual"] = max(stats["max_residual"], residual)
                if residual > tolerances.discriminator or edge.discriminator is None:
                    stats["ok"] = False
            else:
                walk(edge.child, ca, cb, local_dims[1:], depth + 1)

    walk(c.root, psi_amps, phi_amps, dims, 1)
    ok = (
        stats["ok"]
        and abs(stats["p_psi"] - 1.0) <= tolerances.orthogonality
        and abs(stats["p_phi"] - 1.0) <= tolerances.orthogonality
    )
    return CascadeVerification(
        branch_count=stats["branches"],
        reachable_leaves=stats["leaves"],
        max_residual=stats["max_residual"],
        max_depth=stats["max_depth"],
        prob_sum_psi=stats["p_psi"],
        prob_sum_phi=stats["p_phi"],
        passes=ok,
    )


@dataclass(frozen=True, eq=False)
class ExclusionRound:
    """One copy consumed: the fresh challenger versus whichever incumbent survived.

    ``protocols`` maps each possible incumbent index to the pairwise
    protocol for (incumbent, challenger); which entry runs depends on
    earlier verdicts.
    """

    challenger: int
    protocols: tuple[tuple[int, LoccProtocol], ...]

    def protocol_for(self, incumbent: int) -> LoccProtocol:
        for index, protocol in self.protocols:
            if index == incumbent:
                return protocol
        raise KeyError(f"no protocol stored for incumbent {incumbent}")


@dataclass(frozen=True, eq=False)
class ExclusionPlan:
    """Round-by-round exclusion schedule over mutually orthogonal candidates."""

    states: tuple[StateVector, ...]
    partition: Partition
    rounds: tuple[ExclusionRound, ...]

    @property
    def copies_used(self) -> int:
        return len(self.rounds)


@dataclass(frozen=True)
class ExclusionVerification:
    """Exhaustive enumeration of every verdict combination for every true state."""

    candidates: int
    paths_checked: int
    misidentifications: int
    max_excluded_leak: float
    prob_sum_error: float
    passes: bool


def exclusion_protocol(
    states,
    partition: Partition,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ExclusionPlan:
    """Plan distinguishing n mutually orthogonal states with n - 1 copies.

    Round r plays the two lowest-indexed surviving candidates, which is
    always (incumbent, r) for the incumbent that survived rounds 1..r-1;
    the plan stores a protocol per possible incumbent.

    Raises:
        TooFewStates: fewer than two candidates.
        NotMutuallyOrthogonal: some candidate pair is not orthogonal.
    """
    states = tuple(states)
    if len(states) < 2:
        raise TooFewStates(f"need at least 2 candidate states, got {len(states)}")
    for s in states:
        validate_state(s, tolerances)
    for i, j in itertools.combinations(range(len(states)), 2):
        overlap = abs(inner_product(states[i], states[j]))
        if overlap > tolerances.orthogonality:
            raise NotMutuallyOrthogonal(
                f"states {i} and {j} have |inner product| = {overlap:.3g}"
            )
    rounds = []
    for challenger in range(1, len(states)):
        protocols = tuple(
            (incumbent, synthesize_protocol(states[incumbent], states[challenger], partition, tolerances))
            for incumbent in range(challenger)
        )
        rounds.append(ExclusionRound(challenger=challenger, protocols=protocols))
    return ExclusionPlan(states=states, partition=partition, rounds=tuple(rounds))


def _round_verdicts(
    plan: ExclusionPlan,
    incumbent: int,
    challenger: int,
    true_index: int,
    tolerances: Tolerances,
) -> dict[str, float]:
    protocol = plan.rounds[challenger - 1].protocol_for(incumbent)
    return verdict_distribution(protocol, plan.states[true_index], tolerances)


def verify_exclusion(
    plan: ExclusionPlan,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ExclusionVerification:
    """Check the plan identifies every true state on every branch combination.

    For each true state the verdict tree is enumerated exactly; a verdict
    for one pair member must have zero probability under the member it
    excludes (soundness), and the lone survivor at every positive-probability
    leaf must be the true state.
    """
    n = len(plan.states)
    stats = {"paths": 0, "wrong": 0, "leak": 0.0, "prob_err": 0.0, "total": 0.0}

    def walk(true_index: int, incumbent: int, challenger: int, prob: float) -> None:
        if challenger == n:
            stats["paths"] += 1
            stats["total"] += prob
            if incumbent != true_index:
                stats["wrong"] += 1
            return
        verdicts = _round_verdicts(plan, incumbent, challenger, true_index, tolerances)
        for verdict, winner, loser in ((PSI, incumbent, challenger), (PHI, challenger, incumbent)):
            p_branch = verdicts[verdict]
            if p_branch <= tolerances.padding_probability:
                continue
            # Soundness: the excluded candidate never yields this verdict.
            leak = _round_verdicts(plan, incumbent, challenger, loser, tolerances)[verdict]
            stats["leak"] = max(stats["leak"], leak)
            walk(true_index, winner, challenger + 1, prob * p_branch)

    for true_index in range(n):
        stats["total"] = 0.0
        walk(true_index, incumbent=0, challenger=1, prob=1.0)
        stats["prob_err"] = max(stats["prob_err"], abs(stats["total"] - 1.0))

    passes = (
        stats["wrong"] == 0
        and stats["leak"] <= tolerances.orthogonality
        and stats["prob_err"] <= tolerances.orthogonality
    )
    return ExclusionVerification(
        candidates=n,
        paths_checked=stats["paths"],
        misidentifications=stats["wrong"],
        max_excluded_leak=stats["leak"],
        prob_sum_error=stats["prob_err"],
        passes=passes,
    )


def run_exclusion(
    plan: ExclusionPlan,
    actual: StateVector,
    seed: int,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[int, list[tuple[int, int, str]]]:
    """Sample the plan against ``actual``; returns (survivor, round log).

    The log lists (incumbent, challenger, verdict) per consumed copy.
    """
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(17,)))
    incumbent = 0
    log: list[tuple[int, int, str]] = []
    for round_ in plan.rounds:
        protocol = round_.protocol_for(incumbent)
        outcome = sample_run(protocol, actual, int(rng.integers(2**63)), tolerances)
        log.append((incumbent, round_.challenger, outcome.verdict))
        if outcome.verdict == PHI:
            incumbent = round_.challenger
    return incumbent, log


@dataclass(frozen=True)
class BellDemoReport:
    """Exhaustive two-copy identification of the four Bell states.

    Copy 1 is measured by both parties in the computational basis (the
    correlation separates the phi family from the psi family); copy 2 in
    the +/- basis (the correlation separates + from -).
    """

    branch_tables: dict[str, tuple[tuple[str, float, str], ...]]
    misidentifications: int
    copies_used: int
    passes: bool


_BELL_NAMES = ("phi+", "phi-", "psi+", "psi-")


def bell_two_copy_demo() -> BellDemoReport:
    """Verify the fixed two-copy protocol for the four Bell states."""
    hadamard = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
    rotate_x = np.kron(hadamard, hadamard)
    tables: dict[str, tuple[tuple[str, float, str], ...]] = {}
    wrong = 0
    for name, state in zip(_BELL_NAMES, bell_states()):
        z_probs = np.abs(state.amps) ** 2
        x_probs = np.abs(rotate_x @ state.amps) ** 2
        rows = []
        for z_out in range(4):
            if z_probs[z_out] == 0.0:
                continue
            a1, b1 = divmod(z_out, 2)
            for x_out in range(4):
                if x_probs[x_out] == 0.0:
                    continue
                a2, b2 = divmod(x_out, 2)
                prob = float(z_probs[z_out] * x_probs[x_out])
                family = "phi" if a1 == b1 else "psi"
                sign = "+" if a2 == b2 else "-"
                verdict = family + sign
                rows.append((f"copy1={a1}{b1} copy2={a2}{b2}", prob, verdict))
                if verdict != name:
                    wrong += 1
        tables[name] = tuple(rows)
    return BellDemoReport(
        branch_tables=tables,
        misidentifications=wrong,
        copies_used=2,
        passes=(wrong == 0),
    )
