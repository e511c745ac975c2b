"""Seeded random instances: states, orthogonal families, Haar unitaries."""

from __future__ import annotations

import numpy as np

from .statespace import StateVector

__all__ = [
    "random_state",
    "random_orthogonal_pair",
    "random_mutually_orthogonal",
    "random_unitary",
    "random_complex_matrix",
    "random_traceless_matrix",
]


def _gaussian_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


def random_state(dims, rng: np.random.Generator) -> StateVector:
    """Haar-random pure state over the given party dimensions."""
    dims = tuple(int(d) for d in dims)
    v = _gaussian_vector(int(np.prod(dims)), rng)
    return StateVector(dims, v / np.linalg.norm(v))


def random_orthogonal_pair(dims, rng: np.random.Generator) -> tuple[StateVector, StateVector]:
    """Two orthogonal random states on the same parties (Gram-Schmidt)."""
    psi, (phi,) = _orthogonal_family(dims, 2, rng)
    return psi, phi


def random_mutually_orthogonal(dims, count: int, rng: np.random.Generator) -> list[StateVector]:
    """`count` mutually orthogonal random states (count <= total dimension)."""
    first, rest = _orthogonal_family(dims, count, rng)
    return [first, *rest]


def _orthogonal_family(dims, count, rng):
    dims = tuple(int(d) for d in dims)
    dim = int(np.prod(dims))
    if count > dim:
        raise ValueError(f"cannot fit {count} orthogonal states in dimension {dim}")
    vectors: list[np.ndarray] = []
    while len(vectors) < count:
        v = _gaussian_vector(dim, rng)
        for u in vectors:
            v -= np.vdot(u, v) * u
        norm = np.linalg.norm(v)
        if norm < 1e-6:  # essentially impossible; redraw for safety
            continue
        vectors.append(v / norm)
    states = [StateVector(dims, v) for v in vectors]
    return states[0], states[1:]


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with the standard phase correction."""
    Q, R = np.linalg.qr(_gaussian_vector(dim * dim, rng).reshape(dim, dim))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_complex_matrix(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))


def random_traceless_matrix(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    M = random_complex_matrix(dim, rng, scale)
    return M - np.trace(M) / dim * np.eye(dim)
