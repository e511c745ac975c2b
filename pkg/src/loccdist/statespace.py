"""Multipartite pure states and the overlap matrix of a bipartite cut.

Splitting the parties into an "Alice" group and a complementary "Bob" group
turns a pair of shared states into two coefficient matrices F and G whose
rows are Bob's (unnormalized) conditional vectors.  The n x n overlap matrix
collects the inner products between those conditional vectors: its trace is
the inner product of the two states, and a basis rotation on Alice's side
that zeroes its diagonal hands Bob a perfectly distinguishable pair on every
measurement branch.

Conventions (fixed here, used everywhere downstream):

* amplitudes are row-major over parties, leftmost party slowest;
* ``entries[i][j]`` is the inner product of Bob's i-th conditional vector of
  the second state with the j-th conditional vector of the first state,
  i.e. ``entries = conj(G) @ F.T``;
* rotating Alice's factor of both states by a unitary ``U`` (applied to the
  amplitudes) maps ``entries`` to ``conj(U) @ entries @ U.T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionMismatch,
    InvalidPartition,
    NotNormalized,
    NotUnitary,
    ShapeMismatch,
)

__all__ = [
    "StateVector",
    "Partition",
    "CoefficientMatrices",
    "OverlapMatrix",
    "validate_state",
    "validate_partition",
    "extract_coefficients",
    "build_coefficient_matrices",
    "build_overlap_matrix",
    "check_orthogonality",
    "transform_overlap",
    "inner_product",
]


def _frozen_array(a, dtype=np.complex128) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure state of one or more parties.

    ``dims`` lists each party's local dimension; ``amps`` holds the complex
    amplitudes in row-major order over the parties (leftmost party slowest).
    Construction only coerces types; use :func:`validate_state` to enforce
    the length and normalization invariants.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        amps = _frozen_array(np.asarray(self.amps, dtype=np.complex128).ravel())
        object.__setattr__(self, "amps", amps)

    @property
    def num_parties(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per party."""
        return self.amps.reshape(self.dims)

    def __repr__(self) -> str:
        return f"StateVector(dims={self.dims}, amps=<{len(self.amps)} complex>)"


@dataclass(frozen=True)
class Partition:
    """Assignment of party indices to the Alice side and the Bob side.

    Both tuples are ordered: extraction moves Alice's parties to the front
    preserving the order given here, and Bob's parties keep theirs.
    """

    alice_parties: tuple[int, ...]
    bob_parties: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alice_parties", tuple(int(p) for p in self.alice_parties))
        object.__setattr__(self, "bob_parties", tuple(int(p) for p in self.bob_parties))

    @classmethod
    def bipartite(cls, alice_parties, num_parties: int) -> "Partition":
        """Partition with the given Alice parties; Bob gets the rest in ascending order."""
        alice = tuple(int(p) for p in alice_parties)
        bob = tuple(p for p in range(num_parties) if p not in set(alice))
        return cls(alice, bob)


@dataclass(frozen=True, eq=False)
class CoefficientMatrices:
    """The two n x m coefficient matrices of a state pair for one partition.

    Row i of ``F`` lists the first state's conditional Bob vector for Alice
    basis index i; row i of ``G`` does the same for the second state.
    """

    F: np.ndarray
    G: np.ndarray
    n: int
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "F", _frozen_array(self.F))
        object.__setattr__(self, "G", _frozen_array(self.G))


@dataclass(frozen=True, eq=False)
class OverlapMatrix:
    """Matrix of inner products between the two states' conditional vectors.

    ``entries[i][j]`` = <(second state's vector i)|(first state's vector j)>.
    The trace equals the inner product of the two full states, and a zero
    diagonal is exactly the per-outcome distinguishability criterion.
    """

    entries: np.ndarray
    n: int
    source: CoefficientMatrices | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen_array(self.entries))

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.entries))


def validate_state(s: StateVector, tolerances: Tolerances = DEFAULT_TOLERANCES) -> StateVector:
    """Return ``s`` unchanged if its invariants hold.

    Raises:
        DimensionMismatch: amplitude count differs from the product of dims,
            or some dim is not a positive integer.
        NotNormalized: the 2-norm deviates from 1 beyond tolerance.
    """
    if not s.dims or any(d < 1 for d in s.dims):
        raise DimensionMismatch(f"party dimensions must be positive, got {s.dims}")
    expected = int(np.prod(s.dims))
    if len(s.amps) != expected:
        raise DimensionMismatch(
            f"got {len(s.amps)} amplitudes for dims {s.dims} (expected {expected})"
        )
    norm = s.norm
    if abs(norm - 1.0) > tolerances.state_norm:
        raise NotNormalized(f"state norm is {norm!r}; inputs are accepted normalized")
    return s


def validate_partition(partition: Partition, num_parties: int) -> Partition:
    """Return ``partition`` unchanged if it covers exactly ``num_parties`` parties."""
    alice, bob = partition.alice_parties, partition.bob_parties
    if not alice or not bob:
        raise InvalidPartition("both sides of the partition must be non-empty")
    seen = set(alice) | set(bob)
    if len(alice) + len(bob) != num_parties or seen != set(range(num_parties)):
        raise InvalidPartition(
            f"partition {alice} | {bob} does not split parties 0..{num_parties - 1}"
        )
    return partition


def inner_product(phi: StateVector, psi: StateVector) -> complex:
    """<phi|psi> on the full amplitude vectors."""
    if phi.dims != psi.dims:
        raise ShapeMismatch(f"dims differ: {phi.dims} vs {psi.dims}")
    return complex(np.vdot(phi.amps, psi.amps))


def extract_coefficients(
    psi: StateVector,
    partition: Partition,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Coefficient matrix of one state for the given bipartite cut.

    Entry (i, j) is the amplitude of Alice basis index i together with Bob
    basis index j after permuting Alice's parties to the front (their given
    order preserved).  The reshape is a pure index permutation, so
    re-flattening reproduces the input amplitudes exactly.
    """
    validate_state(psi, tolerances)
    validate_partition(partition, psi.num_parties)
    perm = partition.alice_parties + partition.bob_parties
    n = int(np.prod([psi.dims[p] for p in partition.alice_parties]))
    m = int(np.prod([psi.dims[p] for p in partition.bob_parties]))
    return psi.tensor().transpose(perm).reshape(n, m)


def build_coefficient_matrices(
    psi: StateVector,
    phi: StateVector,
    partition: Partition,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> CoefficientMatrices:
    """Extract F (from ``psi``) and G (from ``phi``) for a common partition."""
    if psi.dims != phi.dims:
        raise ShapeMismatch(f"dims differ: {psi.dims} vs {phi.dims}")
    F = extract_coefficients(psi, partition, tolerances)
    G = extract_coefficients(phi, partition, tolerances)
    return CoefficientMatrices(F=F, G=G, n=F.shape[0], m=F.shape[1])


def build_overlap_matrix(
    psi: StateVector,
    phi: StateVector,
    partition: Partition,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OverlapMatrix:
    """Overlap matrix of the pair (``psi``, ``phi``) for the given cut.

    Raises:
        ShapeMismatch: the states live on different party dimensions.
    """
    coeffs = build_coefficient_matrices(psi, phi, partition, tolerances)
    entries = coeffs.G.conj() @ coeffs.F.T
    return OverlapMatrix(entries=entries, n=coeffs.n, source=coeffs)


def check_orthogonality(M: OverlapMatrix, tol: float = DEFAULT_TOLERANCES.orthogonality) -> bool:
    """True iff the trace (the states' inner product) is within ``tol`` of zero."""
    return abs(M.trace) <= tol


def _require_unitary(U: np.ndarray, atol: float) -> np.ndarray:
    U = np.asarray(U, dtype=np.complex128)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotUnitary(f"expected a square matrix, got shape {U.shape}")
    defect = np.abs(U @ U.conj().T - np.eye(U.shape[0])).max()
    if defect > atol:
        raise NotUnitary(f"max |UU† − I| = {defect:.3e} exceeds {atol:.1e}")
    return U


def transform_overlap(
    M: OverlapMatrix,
    U: np.ndarray,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> OverlapMatrix:
    """Overlap matrix after rotating Alice's factor of both states by ``U``.

    Returns ``conj(U) @ M @ U.T``, which equals the matrix rebuilt from the
    amplitude vectors with ``U`` applied to the Alice index.  A rotation on
    Bob's side drops out entirely and needs no counterpart here.
    """
    U = _require_unitary(U, tolerances.unitarity)
    if U.shape[0] != M.n:
        raise ShapeMismatch(f"unitary is {U.shape[0]}x{U.shape[0]} but overlap is {M.n}x{M.n}")
    entries = U.conj() @ M.entries @ U.T
    source = None
    if M.source is not None:
        source = CoefficientMatrices(
            F=U @ M.source.F, G=U @ M.source.G, n=M.source.n, m=M.source.m
        )
    return OverlapMatrix(entries=entries, n=M.n, source=source)
