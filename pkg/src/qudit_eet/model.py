"""Level scheme, dipoles and couplings of a chlorophyll-like four-level qudit.

All quantities are ratios: level energies in units of the Qy transition
frequency, dipoles in units of the Qy transition dipole, couplings in units of
the Qy-Qy exciton coupling J. Physical scales only enter through the
dimensionless drive and coupling parameters in :class:`DimensionlessParams`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

#: Dipole-allowed single-qudit transitions, in storage order.
TRANSITIONS = ((0, 1), (0, 2), (1, 3))

#: Inter-qudit coupling terms |ab><ce| (first qudit label first), in storage
#: order. The label string is the subscript used in the coupling table.
COUPLING_TERMS = (
    ("10,01", (1, 0), (0, 1)),
    ("20,02", (2, 0), (0, 2)),
    ("20,01", (2, 0), (0, 1)),
    ("10,02", (1, 0), (0, 2)),
    ("13,31", (1, 3), (3, 1)),
    ("11,30", (1, 1), (3, 0)),
    ("11,03", (1, 1), (0, 3)),
    ("12,30", (1, 2), (3, 0)),
)

COUPLING_LABELS = tuple(label for label, _, _ in COUPLING_TERMS)


class TruncationMode(enum.Enum):
    FOUR_LEVEL = "four_level"
    THREE_LEVEL = "three_level"
    TWO_LEVEL = "two_level"
    # two-level structure, but qudit A starts in |1> instead of being driven
    SINGLE_EXCITON_MANIFOLD = "single_exciton_manifold"

    @property
    def dimension(self) -> int:
        return {"four_level": 4, "three_level": 3}.get(self.value, 2)


def _surviving(items, dim, levels):
    return tuple(v for v, lv in zip(items, levels) if max(lv) < dim)


_TRANSITION_LEVELS = TRANSITIONS
_COUPLING_LEVELS = tuple(a + b for _, a, b in COUPLING_TERMS)


@dataclass(frozen=True)
class QuditModel:
    """Identical-qudit model in ratio units.

    ``dipole_ratios`` and ``coupling_ratios`` hold only the entries whose levels
    survive the truncation, in :data:`TRANSITIONS` / :data:`COUPLING_TERMS`
    order. ``coupling_sign`` is the sign of J; the ratios multiply it.
    """

    level_ratios: tuple[float, ...]
    dipole_ratios: tuple[float, ...]
    coupling_ratios: tuple[float, ...]
    truncation: TruncationMode = TruncationMode.FOUR_LEVEL
    coupling_sign: int = -1

    def __post_init__(self):
        for name in ("level_ratios", "dipole_ratios", "coupling_ratios"):
            values = tuple(float(v) for v in getattr(self, name))
            if not all(math.isfinite(v) for v in values):
                raise ValueError(f"{name} must be finite, got {values}")
            object.__setattr__(self, name, values)
        d = self.truncation.dimension
        if len(self.level_ratios) != d:
            raise ValueError(
                f"{self.truncation.value} needs {d} level ratios, got {len(self.level_ratios)}"
            )
        if self.level_ratios[0] != 0.0:
            raise ValueError(f"level_ratios[0] must be 0, got {self.level_ratios[0]}")
        n_dip = len(_surviving(TRANSITIONS, d, _TRANSITION_LEVELS))
        if len(self.dipole_ratios) != n_dip:
            raise ValueError(f"{self.truncation.value} needs {n_dip} dipole ratios")
        n_coup = len(_surviving(COUPLING_TERMS, d, _COUPLING_LEVELS))
        if len(self.coupling_ratios) != n_coup:
            raise ValueError(f"{self.truncation.value} needs {n_coup} coupling ratios")
        if self.coupling_sign not in (-1, 1):
            raise ValueError(f"coupling_sign must be +1 or -1, got {self.coupling_sign}")

    @property
    def dim(self) -> int:
        return self.truncation.dimension

    def dipoles(self) -> dict[tuple[int, int], float]:
        """Transition -> dipole ratio, for surviving transitions."""
        kept = _surviving(TRANSITIONS, self.dim, _TRANSITION_LEVELS)
        return dict(zip(kept, self.dipole_ratios))

    def couplings(self) -> dict[str, tuple[tuple[int, int], tuple[int, int], float]]:
        """Label -> (ket pair, bra pair, signed ratio) for surviving couplings."""
        kept = _surviving(COUPLING_TERMS, self.dim, _COUPLING_LEVELS)
        return {
            label: (ket, bra, self.coupling_sign * ratio)
            for (label, ket, bra), ratio in zip(kept, self.coupling_ratios)
        }


@dataclass(frozen=True)
class DimensionlessParams:
    """Drive and coupling parameters.

    gamma
        Degree of initial excitation, field amplitude x dipole x pulse length / hbar.
    delta
        Qy frequency x pulse length.
    gamma2_max
        Upper end of the coupling-time axis, |J| t / hbar.
    r
        Qy frequency over |J|; the free-qudit phase rate per unit gamma2.
    drive_ratio
        Carrier frequency over Qy frequency.
    """

    gamma: float = 0.41
    delta: float = 29.9
    gamma2_max: float = 5.0
    r: float = 2392.0
    drive_ratio: float = 1.0

    def __post_init__(self):
        for name in ("gamma", "delta", "gamma2_max", "r", "drive_ratio"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.gamma2_max < 0:
            raise ValueError(f"gamma2_max must be >= 0, got {self.gamma2_max}")
        if self.r < 0:
            raise ValueError(f"r must be >= 0, got {self.r}")

    def with_gamma(self, gamma: float) -> "DimensionlessParams":
        return replace(self, gamma=gamma)


def default_model() -> QuditModel:
    return QuditModel(
        level_ratios=(0.0, 1.0, 1.04, 2.0),
        dipole_ratios=(1.0, 0.94, 1.0),
        coupling_ratios=(1.0, 0.50, -0.67, 0.72, 0.90, 0.81, 0.81, 0.76),
        truncation=TruncationMode.FOUR_LEVEL,
        coupling_sign=-1,
    )


def default_params() -> DimensionlessParams:
    # delta = 2.99e15 s^-1 x 10 fs, r = 2.99e15 / 1.25e12
    return DimensionlessParams(gamma=0.41, delta=29.9, gamma2_max=5.0, r=2392.0, drive_ratio=1.0)


def truncate(m: QuditModel, mode: TruncationMode) -> QuditModel:
    """Drop levels above ``mode.dimension`` and every term that touches them."""
    mode = TruncationMode(mode)
    if m.truncation is not TruncationMode.FOUR_LEVEL:
        raise ValueError(f"can only truncate a four_level model, got {m.truncation.value}")
    if mode is TruncationMode.FOUR_LEVEL:
        return m
    d = mode.dimension
    return QuditModel(
        level_ratios=m.level_ratios[:d],
        dipole_ratios=_surviving(m.dipole_ratios, d, _TRANSITION_LEVELS),
        coupling_ratios=_surviving(m.coupling_ratios, d, _COUPLING_LEVELS),
        truncation=mode,
        coupling_sign=m.coupling_sign,
    )
