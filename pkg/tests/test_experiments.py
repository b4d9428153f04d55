import numpy as np
import pytest

from oracles import binary_entropy
from qudit_eet.dynamics import EvolutionGrid
from qudit_eet.experiments import (
    ALL_TRUNCATIONS,
    CHUNK_SIZE,
    EntanglementEngine,
    InvariantViolation,
    compare_truncations,
    entanglement_trace,
    max_entanglement,
    sweep_gamma,
    sweep_surface,
)
from qudit_eet.model import DimensionlessParams, TruncationMode, default_model, truncate

SEM = truncate(default_model(), TruncationMode.SINGLE_EXCITON_MANIFOLD)
GRID = EvolutionGrid.uniform(5.0, 20001)


def P(**kw):
    return DimensionlessParams(**kw)


def test_no_excitation_no_entanglement():
    tr = entanglement_trace(default_model(), P(gamma=0.0), GRID)
    assert np.max(np.abs(tr.entropy)) < 1e-9


def test_single_exciton_trace_is_binary_entropy():
    tr = entanglement_trace(SEM, P(), GRID)
    expected = binary_entropy(np.cos(GRID.gamma2_values) ** 2)
    assert np.max(np.abs(tr.entropy - expected)) < 1e-9


def test_single_exciton_maximum():
    best = max_entanglement(SEM, P(), EvolutionGrid.uniform(2.0, 2001))
    assert best.value == pytest.approx(1.0, abs=1e-6)
    assert best.gamma2 == pytest.approx(np.pi / 4, abs=1e-4)


def test_refinement_never_lowers_the_grid_maximum():
    m, p = default_model(), P(gamma=0.8)
    grid = EvolutionGrid.uniform(5.0, 2001)
    coarse = entanglement_trace(m, p, grid).max
    assert max_entanglement(m, p, grid).value >= coarse


def test_coarse_grid_is_densified():
    # 5 points over [0, 5] leaves huge entropy jumps; the search must still land near pi/4
    best = max_entanglement(SEM, P(), EvolutionGrid.uniform(5.0, 21))
    assert best.value > 0.99


def test_vanishing_excitation():
    best = max_entanglement(default_model(), P(gamma=1e-6), GRID)
    assert best.value < 1e-6


def test_strong_excitation():
    best = max_entanglement(default_model(), P(gamma=3.0), GRID)
    assert best.value == pytest.approx(1.0, abs=0.1)


def test_trace_bounds_and_determinism():
    m, p = default_model(), P(gamma=1.7)
    grid = EvolutionGrid.uniform(5.0, 3 * CHUNK_SIZE + 17)
    a = entanglement_trace(m, p, grid, workers=1)
    b = entanglement_trace(m, p, grid, workers=3)
    assert np.array_equal(a.entropy, b.entropy)
    assert a.entropy.min() >= 0 and a.entropy.max() <= 2


def test_grid_doubling_stability():
    m = default_model()
    for g in (0.41, 1.0, 3.0):
        coarse = max_entanglement(m, P(gamma=g), EvolutionGrid.uniform(5.0, 20001)).value
        fine = max_entanglement(m, P(gamma=g), EvolutionGrid.uniform(5.0, 40001)).value
        assert abs(coarse - fine) < 1e-3


def test_small_gamma_continuity():
    m = default_model()
    values = [max_entanglement(m, P(gamma=g), GRID).value for g in (1e-2, 1e-3, 1e-4)]
    assert values[0] > values[1] > values[2]


def test_sweep_gamma_rows():
    sweep = sweep_gamma(default_model(), P(), [0.0, 0.5, 3.0], GRID)
    zero, _, strong = sweep.rows
    assert zero.p0 == pytest.approx(1, abs=1e-12) and zero.e_max < 1e-9
    assert 0.85 <= strong.p1 <= 0.95
    for row in sweep:
        assert abs(row.p0 + row.p1 + row.p2 + row.p3 - 1) < 1e-9
        assert 0 <= row.e_max <= 2


def test_sweep_gamma_monotone_below_one():
    gammas = np.linspace(0.05, 0.95, 10)
    sweep = sweep_gamma(default_model(), P(), gammas, EvolutionGrid.uniform(5.0, 5001))
    assert sweep.is_monotone(0.02)


def test_sweep_gamma_pads_truncated_populations():
    sweep = sweep_gamma(truncate(default_model(), TruncationMode.TWO_LEVEL), P(), [0.4], EvolutionGrid.uniform(5.0, 2001))
    row = sweep.rows[0]
    assert row.p2 == 0 and row.p3 == 0
    assert row.p1 == pytest.approx(np.sin(0.4) ** 2, abs=1e-10)


def test_surface_layout_and_cross_section():
    grid = EvolutionGrid.uniform(5.0, 301)
    gammas = [0.0, 0.41, 1.0]
    surface = sweep_surface(default_model(), P(), gammas, grid)
    cells = list(surface.cells())
    assert len(cells) == 3 * 301
    assert (cells[0].gamma, cells[0].gamma2) == (0.0, 0.0)
    assert (cells[301].gamma, cells[301].gamma2) == (0.41, 0.0)
    assert all(c.entropy < 1e-9 for c in cells[:301])
    assert all(0 <= c.entropy <= 2 for c in cells)
    tr = entanglement_trace(default_model(), P(gamma=0.41), grid)
    assert np.array_equal(surface.cross_section(1).entropy, tr.entropy)


def test_compare_truncations_shape():
    cmp = compare_truncations(0.41, P(), EvolutionGrid.uniform(5.0, 5001))
    assert set(cmp.traces) == set(ALL_TRUNCATIONS)
    lengths = {len(tr.gamma2) for tr in cmp.traces.values()}
    assert lengths == {5001}
    assert cmp.maxima[TruncationMode.SINGLE_EXCITON_MANIFOLD].value == pytest.approx(1, abs=1e-6)
    assert cmp.max_pairwise_deviation > 0.5
    assert cmp.ratio(TruncationMode.FOUR_LEVEL) == 1


def test_invariant_violation_is_raised():
    engine = EntanglementEngine(default_model(), P(gamma=1.0))
    # corrupt the cached Hamiltonian used for the energy check
    engine.propagator.hamiltonian = engine.propagator.hamiltonian + np.diag(np.arange(16.0))
    with pytest.raises(InvariantViolation, match="energy"):
        engine.entropies(1.0, np.linspace(0, 1, 11))


def test_tied_peaks_report_the_earliest():
    # pi/4, 3pi/4, 5pi/4 all reach E = 1 on [0, 5]
    best = max_entanglement(SEM, P(), EvolutionGrid.uniform(5.0, 10000))
    assert best.gamma2 == pytest.approx(np.pi / 4, abs=1e-4)
