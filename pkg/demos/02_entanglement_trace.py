"""
Entanglement between two coupled chromophores
=============================================

Qudit A is excited, qudit B starts in its ground state, and the pair evolves
under the dipole coupling. gamma2 is the coupling strength times time.
"""
from pathlib import Path

from qudit_eet import EvolutionGrid, default_model, default_params
from qudit_eet.experiments import EntanglementEngine
from qudit_eet.svg import line_plot

m, p = default_model(), default_params()
grid = EvolutionGrid.uniform(p.gamma2_max, 20001)
engine = EntanglementEngine(m, p)

series = []
for gamma in (0.41, 1.0, 3.0):
    trace = engine.trace(gamma, grid)
    best = engine.max_entanglement(gamma, grid, trace=trace)
    print(f"gamma = {gamma:4.2f}: E_max = {best.value:.4f} at gamma2 = {best.gamma2:.4f}")
    series.append((f"gamma = {gamma}", trace.gamma2, trace.entropy))

out = Path("entanglement_trace.svg")
out.write_text(line_plot(series, title="Entropy of entanglement", xlabel="gamma2", ylabel="E"))
print("plot written to", out)
