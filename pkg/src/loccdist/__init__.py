"""LOCC discrimination of orthogonal multipartite pure states.

Any two orthogonal pure states shared between separated parties can be told
apart with certainty using only local measurements and classical messages.
This package builds the explicit protocols: overlap-matrix construction,
unitary zerodiagonalization via 2x2 rotations with power-of-two padding,
exact branch-by-branch verification, Born-rule simulation, multipartite
cascading, and multi-copy exclusion of more than two candidates.
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionMismatch,
    InvalidPartition,
    LoccError,
    NotMutuallyOrthogonal,
    NotNormalized,
    NotOrthogonal,
    NotTraceless,
    NotUnitary,
    ParseError,
    ShapeMismatch,
    TooFewParties,
    TooFewStates,
    ZerodiagonalizationError,
)
from .interchange import dump_state, dumps_state, load_state, loads_state
from .locc import (
    PHI,
    PRNG_ALGORITHM,
    PSI,
    BobDiscriminator,
    LoccProtocol,
    RunOutcome,
    SimulationReport,
    VerificationReport,
    sample_run,
    simulate_protocol,
    synthesize_protocol,
    verdict_distribution,
    verify_protocol,
)
from .multiparty import (
    BellDemoReport,
    CascadeEdge,
    CascadeNode,
    CascadeProtocol,
    CascadeVerification,
    ExclusionPlan,
    ExclusionRound,
    ExclusionVerification,
    bell_two_copy_demo,
    cascade_multipartite,
    exclusion_protocol,
    run_exclusion,
    verify_cascade,
    verify_exclusion,
)
from .randomgen import (
    random_mutually_orthogonal,
    random_orthogonal_pair,
    random_state,
    random_traceless_matrix,
    random_unitary,
)
from .states import basis_state, bell_states, ghz, named_state
from .statespace import (
    CoefficientMatrices,
    OverlapMatrix,
    Partition,
    StateVector,
    build_coefficient_matrices,
    build_overlap_matrix,
    check_orthogonality,
    extract_coefficients,
    inner_product,
    transform_overlap,
    validate_partition,
    validate_state,
)
from .zerodiag import (
    RotationStep,
    ZerodiagResult,
    equidiagonalize_2x2,
    pad_to_power_of_two,
    schedule_pairings,
    zerodiagonalize,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "LoccError",
    "DimensionMismatch",
    "NotNormalized",
    "InvalidPartition",
    "ShapeMismatch",
    "NotUnitary",
    "NotTraceless",
    "NotOrthogonal",
    "NotMutuallyOrthogonal",
    "TooFewParties",
    "TooFewStates",
    "ParseError",
    "ZerodiagonalizationError",
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
    "RotationStep",
    "ZerodiagResult",
    "equidiagonalize_2x2",
    "pad_to_power_of_two",
    "schedule_pairings",
    "zerodiagonalize",
    "PSI",
    "PHI",
    "PRNG_ALGORITHM",
    "BobDiscriminator",
    "LoccProtocol",
    "VerificationReport",
    "RunOutcome",
    "SimulationReport",
    "synthesize_protocol",
    "verify_protocol",
    "sample_run",
    "verdict_distribution",
    "simulate_protocol",
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
    "basis_state",
    "bell_states",
    "ghz",
    "named_state",
    "random_state",
    "random_orthogonal_pair",
    "random_mutually_orthogonal",
    "random_unitary",
    "random_traceless_matrix",
    "load_state",
    "loads_state",
    "dump_state",
    "dumps_state",
]
