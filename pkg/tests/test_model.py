import pytest

from qudit_eet.model import (
    COUPLING_LABELS,
    DimensionlessParams,
    QuditModel,
    TruncationMode,
    default_model,
    default_params,
    truncate,
)


def test_default_model_values():
    m = default_model()
    assert m.level_ratios == (0, 1, 1.04, 2)
    assert m.dipole_ratios == (1, 0.94, 1)
    assert m.coupling_ratios == (1, 0.50, -0.67, 0.72, 0.90, 0.81, 0.81, 0.76)
    assert m.truncation is TruncationMode.FOUR_LEVEL
    assert m.dipoles()[(0, 2)] == 0.94
    assert dict(zip(COUPLING_LABELS, m.coupling_ratios))["20,01"] == -0.67


def test_couplings_carry_sign_of_j():
    m = default_model()
    ket, bra, value = m.couplings()["20,01"]
    assert (ket, bra, value) == ((2, 0), (0, 1), 0.67)
    assert m.couplings()["10,01"][2] == -1.0


def test_default_params():
    p = default_params()
    assert p.gamma == 0.41
    assert p.delta == pytest.approx(2.99e15 * 10e-15, rel=1e-12)
    assert p.r == pytest.approx(2.99e15 / 1.25e12, rel=1e-12)
    assert p.drive_ratio == 1.0


def test_truncate_identity():
    assert truncate(default_model(), TruncationMode.FOUR_LEVEL) == default_model()


def test_truncate_three_level():
    m = truncate(default_model(), TruncationMode.THREE_LEVEL)
    assert m.level_ratios == (0, 1, 1.04)
    assert m.coupling_ratios == (1, 0.50, -0.67, 0.72)
    assert m.dipole_ratios == (1, 0.94)


@pytest.mark.parametrize("mode", [TruncationMode.TWO_LEVEL, TruncationMode.SINGLE_EXCITON_MANIFOLD])
def test_truncate_two_level(mode):
    m = truncate(default_model(), mode)
    assert m.coupling_ratios == (1,)
    assert m.dipole_ratios == (1,)
    assert m.level_ratios == (0, 1)
    assert m.dim == 2


@pytest.mark.parametrize("mode", list(TruncationMode))
def test_truncation_keeps_surviving_entries_exactly(mode):
    src = QuditModel((0, 1.3, 0.7, 2.9), (0.2, 0.4, 0.6), tuple(range(1, 9)), coupling_sign=1)
    m = truncate(src, mode)
    assert m.level_ratios == src.level_ratios[: mode.dimension]
    full = dict(zip(COUPLING_LABELS, src.coupling_ratios))
    for label, (_, _, value) in m.couplings().items():
        assert value == full[label]


def test_truncating_twice_is_rejected():
    m = truncate(default_model(), TruncationMode.THREE_LEVEL)
    with pytest.raises(ValueError, match="four_level"):
        truncate(m, TruncationMode.TWO_LEVEL)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(level_ratios=(1, 1, 1.04, 2)),
        dict(level_ratios=(0, 1, 1.04)),
        dict(dipole_ratios=(1, 0.94)),
        dict(coupling_ratios=(1,) * 7),
        dict(level_ratios=(0, 1, float("nan"), 2)),
        dict(coupling_sign=0),
    ],
)
def test_model_invariants(kwargs):
    base = dict(
        level_ratios=(0, 1, 1.04, 2), dipole_ratios=(1, 0.94, 1), coupling_ratios=(1,) * 8
    )
    base.update(kwargs)
    with pytest.raises(ValueError):
        QuditModel(**base)


def test_arbitrary_level_spacing_allowed():
    QuditModel((0, 1.5, 0.5, 1.2), (1, 1, 1), (1,) * 8)


@pytest.mark.parametrize(
    "kwargs", [dict(gamma=-1), dict(delta=float("inf")), dict(r=-1), dict(gamma2_max=-0.1)]
)
def test_params_invariants(kwargs):
    with pytest.raises(ValueError):
        DimensionlessParams(**kwargs)


def test_r_zero_is_allowed():
    assert DimensionlessParams(r=0).r == 0
