"""
How much do the extra levels matter?
====================================

The full four-level model next to its three-level and two-level truncations
and the single-exciton case (A starts in |1>, B in |0>).
"""
from qudit_eet import EvolutionGrid, default_params
from qudit_eet.experiments import ALL_TRUNCATIONS, compare_truncations

p = default_params()
cmp = compare_truncations(0.41, p, EvolutionGrid.uniform(p.gamma2_max, 50001))

for mode in ALL_TRUNCATIONS:
    best = cmp.maxima[mode]
    print(f"{mode.value:24s} E_max = {best.value:.4f}  (x{cmp.ratio(mode):.3f} of four-level)")

# single-exciton: E(gamma2) is the binary entropy of cos^2(gamma2), max 1 at pi/4
print("largest pointwise gap between any two traces:", round(cmp.max_pairwise_deviation, 4))
