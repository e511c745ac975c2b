"""Central tolerance configuration shared by all modules."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the library.

    Checks inside the zerodiagonalization engine scale by the max-magnitude
    entry of the input matrix, so unnormalized research inputs behave the
    same as unit-scale ones.  All other tolerances are absolute.
    """

    state_norm: float = 1e-9
    orthogonality: float = 1e-9
    reconstruction: float = 1e-12
    unitarity: float = 1e-12
    equidiagonal: float = 1e-12
    zerodiag_residual: float = 1e-9
    rotation_skip: float = 1e-12
    discriminator: float = 1e-9
    degenerate_norm: float = 1e-10
    norm_floor: float = 1e-30
    padding_probability: float = 1e-18


DEFAULT_TOLERANCES = Tolerances()
