"""Zerodiagonalization of traceless matrices by 2x2 unitary rotations.

Any two diagonal entries of a complex matrix can be made equal by
conjugating with a single 2x2 unitary of the form

    [[cos(t), sin(t) e^{iw}], [sin(t) e^{-iw}, -cos(t)]]

Pairing the diagonal entries of a 2^k x 2^k matrix along binary bit 0,
then bit 1, and so on equalizes all of them in k rounds of 2^{k-1}
rotations each.  A traceless matrix therefore ends with an all-zero
diagonal after at most k * 2^{k-1} rotations; matrices of other sizes are
first embedded in the next power-of-two dimension with zero padding (one
ancilla qubit suffices physically, since the padded block never holds
amplitude).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NotTraceless, ZerodiagonalizationError

__all__ = [
    "RotationStep",
    "ZerodiagResult",
    "equidiagonalize_2x2",
    "pad_to_power_of_two",
    "schedule_pairings",
    "zerodiagonalize",
]


@dataclass(frozen=True)
class RotationStep:
    """One 2x2 rotation acting on rows/columns ``p`` and ``q`` (p < q)."""

    p: int
    q: int
    theta: float
    omega: float

    def __post_init__(self) -> None:
        if not 0 <= self.p < self.q:
            raise ValueError(f"need 0 <= p < q, got p={self.p}, q={self.q}")

    def block(self) -> np.ndarray:
        """The 2x2 unitary (it is also Hermitian, with determinant -1)."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        phase = cmath.exp(1j * self.omega)
        return np.array([[c, s * phase], [s * phase.conjugate(), -c]], dtype=np.complex128)

    def matrix(self, dim: int) -> np.ndarray:
        """The induced dim x dim unitary: identity except the {p, q} block."""
        full = np.eye(dim, dtype=np.complex128)
        b = self.block()
        full[self.p, self.p] = b[0, 0]
        full[self.p, self.q] = b[0, 1]
        full[self.q, self.p] = b[1, 0]
        full[self.q, self.q] = b[1, 1]
        return full


@dataclass(frozen=True, eq=False)
class ZerodiagResult:
    """Accumulated zerodiagonalizing unitary and the rotations that built it.

    ``U`` equals the ordered product of the step matrices, later steps on
    the left: U = steps[-1] ... steps[1] steps[0].  It acts on the padded
    space, so conjugating the zero-padded input by ``U`` kills the diagonal.
    """

    U: np.ndarray
    steps: tuple[RotationStep, ...]
    padded_dim: int
    original_dim: int

    def __post_init__(self) -> None:
        U = np.array(self.U, dtype=np.complex128)
        U.flags.writeable = False
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def step_bound(self) -> int:
        """k * 2^{k-1} for padded dimension 2^k (equivalently l/2 * log2 l)."""
        k = self.padded_dim.bit_length() - 1
        return k * 2 ** (k - 1) if k else 0


def equidiagonalize_2x2(M: np.ndarray) -> RotationStep:
    """Angles (theta, omega) whose rotation equalizes the diagonal of ``M``.

    Writing M = [[x, y], [z, t]], the rotated diagonal entries differ by

        (x - t) cos(2 theta) + (y e^{-i omega} + z e^{i omega}) sin(2 theta)

    omega is chosen so the real and imaginary parts of this expression are
    parallel as linear forms in (cos 2theta, sin 2theta); theta then kills
    the dominant one, hence both.  A solution exists for every complex M.
    Conventions: atan2(0, 0) = 0 settles both degenerate angle equations,
    and 2 theta is folded into (-pi/2, pi/2].
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {M.shape}")
    x, y, z, t = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    d = x - t
    zy_sum, zy_diff = z + y, z - y

    num = d.imag * zy_sum.real - d.real * zy_sum.imag
    den = d.real * zy_diff.real + d.imag * zy_diff.imag
    omega = math.atan2(num, den)

    s = y * cmath.exp(-1j * omega) + z * cmath.exp(1j * omega)
    # The two component equations are now parallel; solve the larger one.
    if math.hypot(d.real, s.real) >= math.hypot(d.imag, s.imag):
        a, b = d.real, s.real
    else:
        a, b = d.imag, s.imag
    if a == 0.0 and b == 0.0:
        two_theta = 0.0  # diagonal already equal and rotation-insensitive
    else:
        two_theta = math.atan2(a, -b)
        if two_theta > math.pi / 2:
            two_theta -= math.pi
        elif two_theta <= -math.pi / 2:
            two_theta += math.pi
    return RotationStep(p=0, q=1, theta=two_theta / 2.0, omega=omega)


def pad_to_power_of_two(M: np.ndarray) -> np.ndarray:
    """Embed ``M`` in the next power-of-two dimension, zero elsewhere.

    Returns ``M`` itself when its size is already a power of two.
    """
    M = np.asarray(M, dtype=np.complex128)
    n = M.shape[0]
    if M.shape != (n, n) or n < 1:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    l = 1 << max(n - 1, 0).bit_length()
    if l == n:
        return M
    padded = np.zeros((l, l), dtype=np.complex128)
    padded[:n, :n] = M
    return padded


def schedule_pairings(k: int) -> list[list[tuple[int, int]]]:
    """Pairing schedule for 2^k diagonal entries: k rounds of 2^{k-1} pairs.

    Round r (1-based) pairs the indices whose binary representations differ
    only in bit r-1, so equal pairs merge into equal quartets, octets, ...
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rounds = []
    for r in range(k):
        bit = 1 << r
        rounds.append([(i, i | bit) for i in range(1 << k) if not i & bit])
    return rounds


def _apply_rotation(A: np.ndarray, step: RotationStep) -> None:
    """In-place A <- R A R† for the step's induced rotation R."""
    b = step.block()
    idx = [step.p, step.q]
    A[idx, :] = b @ A[idx, :]
    A[:, idx] = A[:, idx] @ b.conj().T


def zerodiagonalize(
    M: np.ndarray,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ZerodiagResult:
    """Unitary U with diag(U M_pad U†) = 0, built from the pairing schedule.

    ``M`` must be traceless within ``tolerances.orthogonality`` scaled by
    its max-magnitude entry.  Pairs whose diagonal entries already agree
    (within the scaled skip tolerance) are left alone, so the step count
    never exceeds k * 2^{k-1} and an already-zerodiagonal input returns the
    identity with no steps.

    Raises:
        NotTraceless: the trace precondition fails (non-orthogonal states).
        ZerodiagonalizationError: the final diagonal residual exceeds
            tolerance (never observed for valid input; not silenced).
    """
    M = np.asarray(M, dtype=np.complex128)
    n = M.shape[0]
    if M.shape != (n, n) or n < 1:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    scale = float(np.abs(M).max())
    trace_budget = tolerances.orthogonality * max(scale, tolerances.norm_floor)
    if abs(np.trace(M)) > trace_budget:
        raise NotTraceless(
            f"|trace| = {abs(np.trace(M)):.3e} exceeds {trace_budget:.3e}; "
            "the source states are not orthogonal"
        )

    A = pad_to_power_of_two(M).copy()
    l = A.shape[0]
    k = l.bit_length() - 1
    U = np.eye(l, dtype=np.complex128)
    steps: list[RotationStep] = []
    skip_gap = tolerances.rotation_skip * scale

    if k:
        for round_pairs in schedule_pairings(k):
            for p, q in round_pairs:
                if abs(A[p, p] - A[q, q]) <= skip_gap:
                    continue
                sub = A[np.ix_([p, q], [p, q])]
                angles = equidiagonalize_2x2(sub)
                step = RotationStep(p=p, q=q, theta=angles.theta, omega=angles.omega)
                _apply_rotation(A, step)
                idx = [p, q]
                U[idx, :] = step.block() @ U[idx, :]
                steps.append(step)

    residual = float(np.abs(np.diag(A)).max())
    if residual > tolerances.zerodiag_residual * max(scale, tolerances.norm_floor):
        raise ZerodiagonalizationError(
            f"diagonal residual {residual:.3e} exceeds tolerance for scale {scale:.3e}"
        )
    return ZerodiagResult(U=U, steps=tuple(steps), padded_dim=l, original_dim=n)
