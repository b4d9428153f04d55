"""Schmidt coefficients and entropy of entanglement of bipartite pure states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import singular_values
from .model import TruncationMode

NORM_ATOL = 1e-10
#: Schmidt values below this are treated as exactly zero before taking logs.
SCHMIDT_CUTOFF = 1e-12


def coefficient_matrix(psi, dims: tuple[int, int]) -> np.ndarray:
    """c[m, n] = <m n|psi>; accepts a single state or a stack of states."""
    psi = np.asarray(psi, dtype=complex)
    dA, dB = dims
    if psi.shape[-1] != dA * dB:
        raise ValueError(f"state length {psi.shape[-1]} does not match dims {dims}")
    return psi.reshape(psi.shape[:-1] + (dA, dB))


def _check_norm(psi):
    norms = np.linalg.norm(psi, axis=-1)
    worst = np.max(np.abs(norms - 1.0))
    if worst > NORM_ATOL:
        raise ValueError(f"state is not normalized: norm deviates from 1 by {worst:.3e}")


def schmidt_values(psi, dims: tuple[int, int]) -> np.ndarray:
    """Descending Schmidt coefficients (singular values of the coefficient matrix).

    Vectorized over leading axes of ``psi``.
    """
    psi = np.asarray(psi, dtype=complex)
    _check_norm(psi)
    return singular_values(coefficient_matrix(psi, dims))


def entropy_of_entanglement(s) -> np.ndarray | float:
    """-sum s_k^2 log2 s_k^2 along the last axis, with 0 log 0 = 0."""
    s = np.asarray(s, dtype=float)
    p = np.where(s > SCHMIDT_CUTOFF, s, 0.0) ** 2
    safe = np.where(p > 0, p, 1.0)
    E = -np.sum(p * np.log2(safe), axis=-1)
    # clip round-off below zero for near-product states
    E = np.maximum(E, 0.0)
    return float(E) if E.ndim == 0 else E


def entropy(psi, dims: tuple[int, int]):
    return entropy_of_entanglement(schmidt_values(psi, dims))


def reduced_density_matrix(psi, dims: tuple[int, int], keep: int = 0) -> np.ndarray:
    """Partial trace of |psi><psi| over the subsystem not in ``keep``."""
    c = coefficient_matrix(psi, dims)
    if keep == 0:
        return c @ np.swapaxes(c.conj(), -1, -2)
    if keep == 1:
        return np.swapaxes(c, -1, -2) @ c.conj()
    raise ValueError(f"keep must be 0 or 1, got {keep}")


def reduced_density_eigenvalues(psi, dims: tuple[int, int], keep: int = 0) -> np.ndarray:
    """Descending eigenvalues of a reduced state; the squares of the Schmidt values."""
    psi = np.asarray(psi, dtype=complex)
    _check_norm(psi)
    rho = reduced_density_matrix(psi, dims, keep)
    return np.linalg.eigvalsh(rho)[..., ::-1]


@dataclass(frozen=True)
class EntanglementTrace:
    """Entropy of entanglement sampled along the coupling-time axis."""

    gamma: float
    truncation: TruncationMode
    gamma2: np.ndarray
    entropy: np.ndarray

    def __post_init__(self):
        for name in ("gamma2", "entropy"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.gamma2.shape != self.entropy.shape:
            raise ValueError("gamma2 and entropy must have the same length")

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.gamma2.tolist(), self.entropy.tolist()))

    @property
    def max(self) -> float:
        return float(np.max(self.entropy))

    @property
    def argmax(self) -> float:
        return float(self.gamma2[int(np.argmax(self.entropy))])
