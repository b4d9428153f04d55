"""Coupled evolution of two identical qudits after qudit A has been excited.

Pair basis index is ``m * d + n`` for |m>_A |n>_B. Time is gamma2 = |J| t / hbar,
so the pair generator is ``r * D + C`` with D the free level sums (units of
the Qy frequency) and C the signed coupling ratios.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import HermitianEigenSystem, eig_hermitian
from .model import QuditModel


@dataclass(frozen=True)
class JointGenerator:
    free_part: np.ndarray
    coupling_part: np.ndarray

    @property
    def dim(self) -> int:
        return self.free_part.shape[0]

    def matrix(self, r: float) -> np.ndarray:
        return r * self.free_part + self.coupling_part


@dataclass(frozen=True)
class EvolutionGrid:
    """Ascending gamma2 sample points starting at 0."""

    gamma2_values: np.ndarray

    def __post_init__(self):
        values = np.array(self.gamma2_values, dtype=float)
        if values.ndim != 1 or len(values) == 0:
            raise ValueError("grid needs at least one point")
        if values[0] != 0.0:
            raise ValueError(f"grid must start at 0, got {values[0]}")
        if np.any(np.diff(values) <= 0):
            raise ValueError("grid must be strictly ascending")
        values.setflags(write=False)
        object.__setattr__(self, "gamma2_values", values)

    @classmethod
    def uniform(cls, gamma2_max: float, samples: int) -> "EvolutionGrid":
        if samples < 2:
            return cls(np.zeros(1))
        return cls(np.linspace(0.0, gamma2_max, samples))

    @property
    def count(self) -> int:
        return len(self.gamma2_values)

    def __len__(self):
        return self.count


def build_joint_generator(m: QuditModel) -> JointGenerator:
    d = m.dim
    levels = np.asarray(m.level_ratios)
    free = np.diag((levels[:, None] + levels[None, :]).ravel()).astype(complex)
    coupling = np.zeros((d * d, d * d), dtype=complex)
    for ket, bra, value in m.couplings().values():
        i = ket[0] * d + ket[1]
        j = bra[0] * d + bra[1]
        coupling[i, j] += value
        coupling[j, i] += np.conj(value)
    return JointGenerator(free, coupling)


def pair_state(psi_a) -> np.ndarray:
    """psi_a (x) |0>_B."""
    psi_a = np.asarray(psi_a, dtype=complex)
    ground = np.zeros(len(psi_a), dtype=complex)
    ground[0] = 1.0
    return np.kron(psi_a, ground)


class PairPropagator:
    """Diagonalizes the pair generator once and evolves any pair state with it.

    Instances are read-only after construction and may be shared across threads.
    """

    def __init__(self, gen: JointGenerator, r: float):
        self.generator = gen
        self.r = float(r)
        self.hamiltonian = gen.matrix(self.r)
        self.hamiltonian.setflags(write=False)
        self.eigensystem: HermitianEigenSystem = eig_hermitian(self.hamiltonian)

    @property
    def dim(self) -> int:
        return self.generator.dim

    def evolve(self, psi0, gamma2_values) -> np.ndarray:
        """Rows are the evolved pair state at each gamma2."""
        return self.eigensystem.evolve(psi0, gamma2_values)

    def energy(self, states) -> np.ndarray:
        """<psi|H|psi> for each row of ``states``."""
        states = np.atleast_2d(states)
        return np.einsum("ij,ij->i", states.conj(), states @ self.hamiltonian.T).real


def evolve_pair(gen: JointGenerator, psi_a, grid: EvolutionGrid, r: float) -> np.ndarray:
    """Evolve psi_a (x) |0>_B over ``grid``; returns an array of shape (count, d*d)."""
    psi_a = np.asarray(psi_a, dtype=complex)
    if len(psi_a) ** 2 != gen.dim:
        raise ValueError(f"qudit state of length {len(psi_a)} does not fit a {gen.dim}-dim pair")
    return PairPropagator(gen, r).evolve(pair_state(psi_a), grid.gamma2_values)
