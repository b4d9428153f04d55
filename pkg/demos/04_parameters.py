"""
Model ratios from a Frenkel exciton Hamiltonian
===============================================

Diagonalize the two-site blocks of phycocyanin 645, rotate the inter-pair
couplings and dipoles into the exciton basis, and form the dimensionless
ratios the model uses. Then estimate gamma from laser pulse parameters.
"""
from qudit_eet import estimation as est

model, report = est.estimate_table1()
print(report.to_text())

pulse = est.PulseSpec.typical()
print(f"field amplitude  {pulse.field_amplitude:.4e} V/m")
print(f"gamma from pulse {est.gamma_from_pulse(pulse):.4f}  (quoted value {est.QUOTED_GAMMA})")
