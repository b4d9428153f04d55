"""Excitation of a single qudit by a constant-amplitude classical carrier.

Time is measured in units of the pulse duration, so the drive acts for unit
time and the rotating-frame generator is dimensionless.
"""
from __future__ import annotations

import numpy as np

from .linalg import eig_hermitian
from .model import DimensionlessParams, QuditModel, TruncationMode


def build_drive_generator(m: QuditModel, p: DimensionlessParams) -> np.ndarray:
    """Rotating-wave drive Hamiltonian times pulse duration over hbar.

    The carrier shifts the ground level up and the top level down by one photon,
    leaving |1> and |2> untouched; off-diagonals are gamma times the dipole
    ratio of each allowed transition.
    """
    d = m.dim
    levels = np.asarray(m.level_ratios)
    diag = p.delta * levels
    diag[0] = p.delta * p.drive_ratio
    if d == 4:
        diag[3] = p.delta * (levels[3] - p.drive_ratio)
    M = np.diag(diag).astype(complex)
    for (i, j), ratio in m.dipoles().items():
        M[i, j] = M[j, i] = p.gamma * ratio
    return M


def rotating_frame_unitary(p: DimensionlessParams, phase_time: float, dim: int = 4) -> np.ndarray:
    """Diagonal frame change diag(e^{i delta_L s}, 1, 1, e^{-i delta_L s}), s = phase_time."""
    if dim not in (2, 3, 4):
        raise ValueError(f"dim must be 2, 3 or 4, got {dim}")
    phase = p.delta * p.drive_ratio * phase_time
    diag = np.ones(dim, dtype=complex)
    diag[0] = np.exp(1j * phase)
    if dim == 4:
        diag[3] = np.exp(-1j * phase)
    return np.diag(diag)


def prepare_initial_state(m: QuditModel, p: DimensionlessParams) -> np.ndarray:
    """State of qudit A right after the pulse, starting from |0>.

    Enters the rotating frame at the start of the pulse (identity), evolves
    under the drive generator, and leaves the frame at the end. In the
    single-exciton manifold qudit A is simply |1>.
    """
    d = m.dim
    psi = np.zeros(d, dtype=complex)
    if m.truncation is TruncationMode.SINGLE_EXCITON_MANIFOLD:
        psi[1] = 1.0
        return psi
    psi[0] = 1.0
    M = build_drive_generator(m, p)
    U_end = rotating_frame_unitary(p, 1.0, d)
    return U_end.conj().T @ (eig_hermitian(M).propagator(1.0) @ psi)


def populations(psi) -> np.ndarray:
    """|<n|psi>|^2 for each basis level."""
    psi = np.asarray(psi, dtype=complex)
    return (psi * psi.conj()).real
