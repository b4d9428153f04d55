"""Small dense complex linear algebra.

Hilbert spaces here never exceed 16 dimensions, so time evolution is done by
one Hermitian eigendecomposition followed by phase factors, which amortizes
well over very dense time grids.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Largest tolerated |H - H^dagger| entry for an input called Hermitian.
HERMITIAN_ATOL = 1e-12
#: Bound on max-abs error of Q diag(w) Q^dagger and of Q^dagger Q - I.
RECONSTRUCTION_ATOL = 1e-10


def _as_matrix(H, name="matrix") -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] < 1 or H.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise ValueError(f"{name} has non-finite entries")
    return H


def check_hermitian(H, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    """Return ``H`` as a complex array, raising if it is not square Hermitian."""
    H = _as_matrix(H)
    if H.shape[0] != H.shape[1]:
        raise ValueError(f"matrix must be square, got shape {H.shape}")
    dev = np.abs(H - H.conj().T)
    worst = np.unravel_index(np.argmax(dev), dev.shape)
    if dev[worst] > atol:
        i, j = (int(k) for k in worst)
        raise ValueError(
            f"matrix is not Hermitian: |H[{i},{j}] - conj(H[{j},{i}])| = "
            f"{dev[worst]:.3e} exceeds {atol:.0e}"
        )
    return H


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude component is real positive.

    Ties go to the lowest index, so the result is reproducible.
    """
    vectors = np.array(vectors, dtype=complex)
    rows = np.argmax(np.abs(vectors), axis=0)
    pivots = vectors[rows, np.arange(vectors.shape[1])]
    vectors /= pivots / np.abs(pivots)
    vectors[rows, np.arange(vectors.shape[1])] = np.abs(pivots)
    return vectors


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Ascending eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        Q = self.eigenvectors
        return (Q * self.eigenvalues) @ Q.conj().T

    def propagator(self, tau: float) -> np.ndarray:
        """exp(-i H tau)."""
        Q = self.eigenvectors
        return (Q * np.exp(-1j * self.eigenvalues * tau)) @ Q.conj().T

    def evolve(self, vector, taus) -> np.ndarray:
        """Rows are exp(-i H tau) @ vector for each tau in ``taus``."""
        Q = self.eigenvectors
        coeffs = Q.conj().T @ np.asarray(vector, dtype=complex)
        phases = np.exp(-1j * np.outer(np.asarray(taus, dtype=float), self.eigenvalues))
        return (phases * coeffs) @ Q.T


def eig_hermitian(H) -> HermitianEigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Eigenvectors are phase-fixed with :func:`fix_phases`. Raises ``ValueError``
    for non-square or non-Hermitian input, naming the worst entry.
    """
    H = check_hermitian(H)
    H = 0.5 * (H + H.conj().T)
    w, Q = np.linalg.eigh(H)
    return HermitianEigenSystem(np.ascontiguousarray(w), fix_phases(Q))


def propagator(H, tau: float) -> np.ndarray:
    """Unitary exp(-i H tau) via spectral decomposition."""
    if not np.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    return eig_hermitian(H).propagator(tau)


def singular_values(c) -> np.ndarray:
    """Singular values in descending order; works on stacks of matrices."""
    c = np.asarray(c, dtype=complex)
    if c.ndim < 2:
        raise ValueError(f"expected a matrix or a stack of matrices, got shape {c.shape}")
    return np.linalg.svd(c, compute_uv=False)
