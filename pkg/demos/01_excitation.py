"""
Exciting one qudit with a short pulse
=====================================

Populations of the four levels of qudit A after the pulse, as the pulse
strength gamma grows. For the two-level truncation this is plain Rabi
flopping, p1 = sin^2(gamma).
"""
import numpy as np

from qudit_eet import TruncationMode, default_model, default_params, truncate
from qudit_eet.excitation import populations, prepare_initial_state

m = default_model()
p = default_params()

print("gamma     p0       p1       p2       p3")
for gamma in [0.0, 0.2, 0.41, 1.0, 2.0, 3.0]:
    pops = populations(prepare_initial_state(m, p.with_gamma(gamma)))
    print(f"{gamma:5.2f}  " + "  ".join(f"{x:.5f}" for x in pops))

# the two-level case against sin^2
two = truncate(m, TruncationMode.TWO_LEVEL)
g = np.linspace(0, np.pi, 7)
p1 = [populations(prepare_initial_state(two, p.with_gamma(x)))[1] for x in g]
print("\ntwo-level p1 - sin^2(gamma):", np.max(np.abs(np.array(p1) - np.sin(g) ** 2)))
