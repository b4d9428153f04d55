"""Independent reference computations used to check the library.

Nothing here imports ``qudit_eet``; every function is written from scratch
with a different algorithm than the code it checks.
"""
import math

import numpy as np


def taylor_expm(A, terms=40):
    """exp(A) by scaling and squaring with a truncated Taylor series."""
    A = np.asarray(A, dtype=complex)
    norm = np.linalg.norm(A, 1)
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    B = A / 2**s
    out = np.eye(A.shape[0], dtype=complex)
    term = np.eye(A.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ B / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def taylor_propagator(H, tau):
    return taylor_expm(-1j * tau * np.asarray(H, dtype=complex))


def eig2x2_closed_form(a, b, v):
    """Ascending eigenvalues of [[a, v], [v, b]]."""
    mean = 0.5 * (a + b)
    radius = math.sqrt((0.5 * (a - b)) ** 2 + v * v)
    return mean - radius, mean + radius


def partial_trace_b(psi, dA, dB):
    """rho_A = Tr_B |psi><psi| with explicit index loops."""
    psi = np.asarray(psi, dtype=complex)
    rho = np.zeros((dA, dA), dtype=complex)
    for i in range(dA):
        for j in range(dA):
            acc = 0j
            for k in range(dB):
                acc += psi[i * dB + k] * np.conj(psi[j * dB + k])
            rho[i, j] = acc
    return rho


def partial_trace_a(psi, dA, dB):
    psi = np.asarray(psi, dtype=complex)
    rho = np.zeros((dB, dB), dtype=complex)
    for i in range(dB):
        for j in range(dB):
            acc = 0j
            for k in range(dA):
                acc += psi[k * dB + i] * np.conj(psi[k * dB + j])
            rho[i, j] = acc
    return rho


def binary_entropy(p):
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        mask = q > 0
        out[mask] -= q[mask] * np.log2(q[mask])
    return out


def random_hermitian(rng, n, scale=1.0):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (X + X.conj().T) / 2


def random_unitary(rng, n):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(X)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_state(rng, n):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def drive_state_oracle(gamma, delta, level_ratios, dipoles, drive_ratio=1.0):
    """Post-pulse single-qudit state built entry by entry and exponentiated
    with the Taylor oracle, for checking the excitation module."""
    d = len(level_ratios)
    M = np.zeros((d, d), dtype=complex)
    M[0, 0] = delta * drive_ratio
    for n in range(1, d):
        M[n, n] = delta * level_ratios[n]
    if d == 4:
        M[3, 3] = delta * (level_ratios[3] - drive_ratio)
    for (i, j), value in dipoles.items():
        if i < d and j < d:
            M[i, j] = M[j, i] = gamma * value
    ground = np.zeros(d, dtype=complex)
    ground[0] = 1
    psi = taylor_expm(-1j * M) @ ground
    frame = np.ones(d, dtype=complex)
    frame[0] = np.exp(1j * delta * drive_ratio)
    if d == 4:
        frame[3] = np.exp(-1j * delta * drive_ratio)
    return np.conj(frame) * psi
