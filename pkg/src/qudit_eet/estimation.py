"""Model parameters from a four-site Frenkel exciton Hamiltonian, and the
dimensionless drive strength of a laser pulse.

Two strongly coupled site pairs (A1, A2) and (B1, B2) each form one qudit:
diagonalizing a pair's 2x2 block gives the qudit's |1> and |2>, the weak
inter-pair block gives the qudit-qudit couplings, and rotating the site
transition dipoles gives the qudit dipoles. Energies are in cm^-1 and
dipoles in Debye unless stated otherwise.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import constants

from .model import QuditModel, TruncationMode

#: 1 Debye in C m.
DEBYE = 3.33564e-30
#: Speed of light in cm/s.
C_CM = constants.c * 100.0
HBAR = constants.hbar
EPSILON_0 = constants.epsilon_0

# Values assigned from typical chlorophyll data rather than computed.
ASSIGNED_LEVEL3_RATIO = 2.0
ASSIGNED_DIPOLE31_RATIO = 1.0
ASSIGNED_COUPLINGS = {"13,31": 0.90, "11,30": 0.81, "11,03": 0.81, "12,30": 0.76}

QUOTED_GAMMA = 0.41
QUOTED_OMEGA1 = 2.99e15


@dataclass(frozen=True)
class FrenkelBlock:
    site_energies: tuple[float, float]
    coupling: float

    @property
    def matrix(self) -> np.ndarray:
        (e1, e2), v = self.site_energies, self.coupling
        return np.array([[e1, v], [v, e2]], dtype=float)


@dataclass(frozen=True)
class ExcitonBasis:
    """Ascending eigenvalues; row k of ``eigenvectors`` is exciton k+1 in site amplitudes."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def relabeled(self) -> "ExcitonBasis":
        """Same basis with |1> and |2> swapped."""
        return ExcitonBasis(self.eigenvalues[::-1].copy(), self.eigenvectors[::-1].copy())


def _fix_sign(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v if v[k] > 0 else -v


def diagonalize_block(b: FrenkelBlock) -> ExcitonBasis:
    """Closed-form eigensystem of a real symmetric 2x2 block."""
    (e1, e2), v = b.site_energies, b.coupling
    mean = 0.5 * (e1 + e2)
    half = 0.5 * (e1 - e2)
    radius = math.hypot(half, v)
    values = np.array([mean - radius, mean + radius])
    if v == 0.0:
        order = np.argsort([e1, e2], kind="stable")
        return ExcitonBasis(np.array([e1, e2])[order], np.eye(2)[order])
    # rotation angle with tan(2 theta) = 2 v / (e1 - e2); upper state is (cos, sin)
    theta = 0.5 * math.atan2(2.0 * v, e1 - e2)
    c, s = math.cos(theta), math.sin(theta)
    vectors = np.array([_fix_sign(np.array([-s, c])), _fix_sign(np.array([c, s]))])
    return ExcitonBasis(values, vectors)


def _inter_block(V) -> np.ndarray:
    V = np.asarray(V, dtype=float)
    if V.shape != (4, 4):
        raise ValueError(f"V must be 4x4, got shape {V.shape}")
    if np.any(V[:2, :2] != 0) or np.any(V[2:, 2:] != 0):
        raise ValueError("V must have zero intra-pair blocks")
    if not np.allclose(V, V.T, rtol=0, atol=1e-12):
        raise ValueError("V must be symmetric")
    return V[:2, 2:]


class ExcitonCouplings(NamedTuple):
    j10_01: float
    j20_02: float
    j10_02: float
    j20_01: float


def exciton_couplings(basis_a: ExcitonBasis, basis_b: ExcitonBasis, V) -> ExcitonCouplings:
    """J_jk = <j|_A V |k>_B for exciton labels j, k in {1, 2}."""
    J = basis_a.eigenvectors @ _inter_block(V) @ basis_b.eigenvectors.T
    return ExcitonCouplings(J[0, 0], J[1, 1], J[0, 1], J[1, 0])


class TransitionDipoles(NamedTuple):
    d10: float
    d20: float

    @property
    def ratio(self) -> float:
        return self.d20 / self.d10


def transition_dipoles(basis: ExcitonBasis, site_dipoles) -> TransitionDipoles:
    """Magnitudes of the exciton transition dipoles from the two site dipoles (rows)."""
    site_dipoles = np.asarray(site_dipoles, dtype=float)
    if site_dipoles.shape != (2, 3):
        raise ValueError(f"site_dipoles must be two 3-vectors, got shape {site_dipoles.shape}")
    d = basis.eigenvectors @ site_dipoles
    return TransitionDipoles(*np.linalg.norm(d, axis=1).tolist())


def wavenumber_to_angular(nu):
    """cm^-1 to rad/s."""
    return 2.0 * math.pi * C_CM * nu


@dataclass(frozen=True)
class PulseSpec:
    """Pulse energy W (J), duration T (s), beam cross-section A (m^2), dipole d (C m)."""

    energy: float
    duration: float
    cross_section: float
    dipole: float

    def __post_init__(self):
        if not self.energy >= 0:
            raise ValueError(f"pulse energy must be >= 0, got {self.energy}")
        for name in ("duration", "cross_section", "dipole"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @classmethod
    def typical(cls) -> "PulseSpec":
        # 5 nJ, 10 fs, 2500 pi um^2, 5 D
        return cls(5e-9, 10e-15, 2500.0 * math.pi * 1e-12, 5.0 * DEBYE)

    @property
    def field_amplitude(self) -> float:
        """E0 from eps0 E0^2 / 2 = W / (c T A)."""
        return math.sqrt(2.0 * self.energy / (constants.c * self.duration * self.cross_section * EPSILON_0))


def gamma_from_pulse(p: PulseSpec) -> float:
    """gamma = E0 d T / hbar."""
    return p.dipole * p.field_amplitude * p.duration / HBAR


# Published inputs for phycocyanin 645 (cm^-1 and Debye).
PC645_BLOCK_A = FrenkelBlock((16050.0, 15808.0), -87.0)
PC645_BLOCK_B = FrenkelBlock((16373.0, 15889.0), 86.0)
PC645_V = np.array(
    [
        [0.0, 0.0, 4.0, -3.0],
        [0.0, 0.0, 3.0, 8.0],
        [4.0, 3.0, 0.0, 0.0],
        [-3.0, 8.0, 0.0, 0.0],
    ]
)
PC645_DIPOLES_A = np.array([[-1.42, 4.54, -13.70], [13.58, 3.53, 1.78]])
PC645_DIPOLES_B = np.array([[1.50, 2.60, -14.20], [4.98, -12.51, -3.81]])


@dataclass
class EstimationReport:
    basis_a: ExcitonBasis
    basis_b: ExcitonBasis
    couplings: ExcitonCouplings
    conventions: dict[str, ExcitonCouplings]
    dipoles_a: TransitionDipoles
    dipoles_b: TransitionDipoles
    omega1_cm: float
    omega2_cm: float
    ratios: dict[str, float] = field(default_factory=dict)
    assigned: dict[str, float] = field(default_factory=dict)

    def items(self) -> list[tuple[str, float]]:
        """Flat key/value pairs in a fixed order."""
        out = [
            ("hbar_J_s", HBAR),
            ("epsilon0_F_per_m", EPSILON_0),
            ("c_m_per_s", constants.c),
            ("debye_C_m", DEBYE),
        ]
        for tag, basis in (("A", self.basis_a), ("B", self.basis_b)):
            out += [(f"omega_{tag}{k + 1}_cm", float(w)) for k, w in enumerate(basis.eigenvalues)]
            out += [
                (f"vector_{tag}{k + 1}_{i + 1}", float(basis.eigenvectors[k, i]))
                for k in range(2)
                for i in range(2)
            ]
        out += [("omega1_cm", self.omega1_cm), ("omega2_cm", self.omega2_cm)]
        out += [("omega1_rad_s", float(wavenumber_to_angular(self.omega1_cm)))]
        out += [("omega2_rad_s", float(wavenumber_to_angular(self.omega2_cm)))]
        for name, value in self.couplings._asdict().items():
            out += [(f"{name}_cm", float(value)), (f"{name}_rad_s", float(wavenumber_to_angular(value)))]
        for label, c in self.conventions.items():
            out += [(f"convention_{label}_{name}_cm", float(v)) for name, v in c._asdict().items()]
        for tag, dip in (("A", self.dipoles_a), ("B", self.dipoles_b)):
            out += [(f"d10_{tag}_debye", dip.d10), (f"d20_{tag}_debye", dip.d20), (f"d20_over_d10_{tag}", dip.ratio)]
        out += [(f"ratio_{k}", v) for k, v in self.ratios.items()]
        out += [(f"assigned_{k}", v) for k, v in self.assigned.items()]
        return out

    def to_text(self) -> str:
        lines = [
            "Parameter estimation from a four-site Frenkel Hamiltonian",
            f"constants: hbar = {HBAR!r} J s, eps0 = {EPSILON_0!r} F/m, "
            f"c = {constants.c!r} m/s, 1 D = {DEBYE!r} C m",
            "",
        ]
        for tag, basis in (("A", self.basis_a), ("B", self.basis_b)):
            w1, w2 = basis.eigenvalues
            lines.append(f"qudit {tag}: exciton energies {w1:.2f}, {w2:.2f} cm^-1")
            for k in range(2):
                a1, a2 = basis.eigenvectors[k]
                lines.append(f"  |{k + 1}> = {a1:+.6f} |{tag}1> {a2:+.6f} |{tag}2>")
        lines.append(
            f"omega1 = {self.omega1_cm:.2f} cm^-1 = {float(wavenumber_to_angular(self.omega1_cm)):.4e} rad/s"
            f" (quoted {QUOTED_OMEGA1:.2e})"
        )
        lines.append(f"omega2 = {self.omega2_cm:.2f} cm^-1 = {float(wavenumber_to_angular(self.omega2_cm)):.4e} rad/s")
        lines.append("")
        lines.append("couplings (lower exciton labeled |1> in both qudits):")
        for name, value in self.couplings._asdict().items():
            lines.append(f"  {name:7s} {value:+9.4f} cm^-1  {float(wavenumber_to_angular(value)):+.4e} rad/s")
        lines.append("couplings under every labeling of the two qudits (cm^-1):")
        for label, c in self.conventions.items():
            lines.append(f"  {label:11s} " + "  ".join(f"{n}={v:+8.4f}" for n, v in c._asdict().items()))
        lines.append("")
        for tag, dip in (("A", self.dipoles_a), ("B", self.dipoles_b)):
            lines.append(
                f"qudit {tag} dipoles: |d10| = {dip.d10:.3f} D, |d20| = {dip.d20:.3f} D, ratio {dip.ratio:.4f}"
            )
        lines.append("")
        lines.append("model ratios (computed):")
        lines += [f"  {k} = {v:.6g}" for k, v in self.ratios.items()]
        lines.append("model ratios (assigned, not computed):")
        lines += [f"  {k} = {v:.6g}" for k, v in self.assigned.items()]
        return "\n".join(lines) + "\n"


def estimate_table1(
    block_a: FrenkelBlock = PC645_BLOCK_A,
    block_b: FrenkelBlock = PC645_BLOCK_B,
    V=PC645_V,
    dipoles_a=PC645_DIPOLES_A,
    dipoles_b=PC645_DIPOLES_B,
    level3_ratio: float = ASSIGNED_LEVEL3_RATIO,
    dipole31_ratio: float = ASSIGNED_DIPOLE31_RATIO,
    assigned_couplings: dict[str, float] | None = None,
) -> tuple[QuditModel, EstimationReport]:
    """Model ratios computed from site data.

    Both qudits are taken identical: level energies and dipole magnitudes are
    averaged over A and B. Excitons are labeled by energy (lower is |1>).
    """
    assigned_couplings = dict(ASSIGNED_COUPLINGS if assigned_couplings is None else assigned_couplings)
    basis_a = diagonalize_block(block_a)
    basis_b = diagonalize_block(block_b)
    couplings = exciton_couplings(basis_a, basis_b, V)
    conventions = {}
    for swap_a, swap_b in itertools.product((False, True), repeat=2):
        ba = basis_a.relabeled() if swap_a else basis_a
        bb = basis_b.relabeled() if swap_b else basis_b
        label = f"A{'21' if swap_a else '12'}_B{'21' if swap_b else '12'}"
        conventions[label] = exciton_couplings(ba, bb, V)
    dip_a = transition_dipoles(basis_a, dipoles_a)
    dip_b = transition_dipoles(basis_b, dipoles_b)

    omega1 = 0.5 * (basis_a.eigenvalues[0] + basis_b.eigenvalues[0])
    omega2 = 0.5 * (basis_a.eigenvalues[1] + basis_b.eigenvalues[1])
    d10 = 0.5 * (dip_a.d10 + dip_b.d10)
    d20 = 0.5 * (dip_a.d20 + dip_b.d20)
    J = couplings.j10_01
    ratios = {
        "omega2_over_omega1": omega2 / omega1,
        "d20_over_d10": d20 / d10,
        "J20_02_over_J": couplings.j20_02 / J,
        "J20_01_over_J": couplings.j20_01 / J,
        "J10_02_over_J": couplings.j10_02 / J,
    }
    assigned = {"omega3_over_omega1": level3_ratio, "d31_over_d10": dipole31_ratio}
    assigned.update({f"J{k.replace(',', '_')}_over_J": v for k, v in assigned_couplings.items()})

    model = QuditModel(
        level_ratios=(0.0, 1.0, ratios["omega2_over_omega1"], level3_ratio),
        dipole_ratios=(1.0, ratios["d20_over_d10"], dipole31_ratio),
        coupling_ratios=(
            1.0,
            ratios["J20_02_over_J"],
            ratios["J20_01_over_J"],
            ratios["J10_02_over_J"],
            assigned_couplings["13,31"],
            assigned_couplings["11,30"],
            assigned_couplings["11,03"],
            assigned_couplings["12,30"],
        ),
        truncation=TruncationMode.FOUR_LEVEL,
        coupling_sign=1 if J >= 0 else -1,
    )
    report = EstimationReport(
        basis_a, basis_b, couplings, conventions, dip_a, dip_b, float(omega1), float(omega2),
        {k: float(v) for k, v in ratios.items()}, assigned,
    )
    return model, report
