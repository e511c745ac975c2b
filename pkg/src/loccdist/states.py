"""Built-in named states: the four Bell states, GHZ families, basis states."""

from __future__ import annotations

import math
import re

import numpy as np

from .statespace import StateVector

__all__ = [
    "bell_phi_plus",
    "bell_phi_minus",
    "bell_psi_plus",
    "bell_psi_minus",
    "bell_states",
    "ghz",
    "basis_state",
    "named_state",
    "NAMED_STATES",
]

_SQRT_HALF = 1.0 / math.sqrt(2.0)


def basis_state(dims, index: int) -> StateVector:
    """Computational basis state |index> (row-major over parties)."""
    dims = tuple(int(d) for d in dims)
    amps = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(dims=dims, amps=amps)


def bell_phi_plus() -> StateVector:
    return StateVector((2, 2), [_SQRT_HALF, 0, 0, _SQRT_HALF])


def bell_phi_minus() -> StateVector:
    return StateVector((2, 2), [_SQRT_HALF, 0, 0, -_SQRT_HALF])


def bell_psi_plus() -> StateVector:
    return StateVector((2, 2), [0, _SQRT_HALF, _SQRT_HALF, 0])


def bell_psi_minus() -> StateVector:
    return StateVector((2, 2), [0, _SQRT_HALF, -_SQRT_HALF, 0])


def bell_states() -> tuple[StateVector, StateVector, StateVector, StateVector]:
    """The four Bell states in the order phi+, phi-, psi+, psi-."""
    return bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()


def ghz(num_qubits: int = 3, sign: int = +1) -> StateVector:
    """(|0...0> ± |1...1>)/sqrt(2) on the given number of qubits."""
    if num_qubits < 2:
        raise ValueError("GHZ needs at least 2 qubits")
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[0] = _SQRT_HALF
    amps[-1] = sign * _SQRT_HALF
    return StateVector((2,) * num_qubits, amps)


NAMED_STATES = {
    "bell_phi_plus": bell_phi_plus,
    "bell_phi_minus": bell_phi_minus,
    "bell_psi_plus": bell_psi_plus,
    "bell_psi_minus": bell_psi_minus,
    "phi+": bell_phi_plus,
    "phi-": bell_phi_minus,
    "psi+": bell_psi_plus,
    "psi-": bell_psi_minus,
    "ghz": lambda: ghz(3, +1),
    "ghz_minus": lambda: ghz(3, -1),
}

_GHZ_PATTERN = re.compile(r"^ghz(\d+)(_minus)?$")


def named_state(name: str) -> StateVector:
    """Look up a built-in state by keyword (e.g. ``bell_phi_plus``, ``ghz4``)."""
    key = name.strip().lower()
    if key in NAMED_STATES:
        return NAMED_STATES[key]()
    match = _GHZ_PATTERN.match(key)
    if match:
        return ghz(int(match.group(1)), -1 if match.group(2) else +1)
    raise KeyError(f"unknown built-in state {name!r}")
